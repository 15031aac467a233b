#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vidm/diffusion.hpp"

namespace vidm {

struct DiffusionConfig {
  int64_t steps = 200;
  double beta_start = 1e-4;
  double beta_end = 0.02;
  SigmaKind sigma = SigmaKind::Beta;
  bool deterministic_last = true;

  bool operator==(const DiffusionConfig&) const = default;
};

struct DataConfig {
  int64_t videos = 256;
  int64_t frames = 16;
  int64_t channels = 3;
  int64_t height = 32;
  int64_t width = 32;
  int64_t shapes_per_video = 2;
  double min_speed = 0.5;
  double max_speed = 2.0;
  uint64_t seed = 7;
  bool flip = false;

  bool operator==(const DataConfig&) const = default;
};

struct ModelConfig {
  int64_t base_width = 64;
  std::vector<int64_t> channel_mult{1, 2, 2};
  int64_t res_blocks = 2;
  int64_t attn_resolution = 16;
  int64_t heads = 4;
  int64_t posgn_hidden = 32;
  double omega = 30.0;
  int64_t latent_channels = 2;
  int64_t latent_width = 16;
  int64_t latent_levels = 3;
  int64_t latent_stride = 4;
  int64_t residual_width = 64;
  uint64_t init_seed = 0;

  bool operator==(const ModelConfig&) const = default;
};

struct OptimConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
  double grad_clip = 1.0;

  bool operator==(const OptimConfig&) const = default;
};

struct TrainConfig {
  int64_t batch_size = 16;
  int64_t max_steps = 5000;
  int64_t ckpt_every = 1000;
  int64_t log_every = 50;
  uint64_t seed = 1;
  double eta = 1e-8;

  bool operator==(const TrainConfig&) const = default;
};

/// Single-component ablations; each one mirrors a row of the ablation tables.
struct AblationFlags {
  bool no_truncation = false;
  bool no_robust_penalty = false;
  bool no_posgn = false;
  bool no_implicit_latent = false;
  bool no_residual = false;

  bool operator==(const AblationFlags&) const = default;
};

struct EvalConfig {
  uint64_t extractor_seed = 1234;
  int64_t feature_dim = 256;
  int64_t clips = 256;

  bool operator==(const EvalConfig&) const = default;
};

struct SampleConfig {
  int64_t frames = 16;
  uint64_t seed = 0;
  double fps = 8.0;

  bool operator==(const SampleConfig&) const = default;
};

/// Every hyperparameter of a run. Serialized verbatim into each checkpoint so
/// a checkpoint is self-describing.
struct RunConfig {
  DiffusionConfig diffusion;
  DataConfig data;
  ModelConfig model;
  OptimConfig optim;
  TrainConfig train;
  AblationFlags ablation;
  EvalConfig eval;
  SampleConfig sample;

  bool operator==(const RunConfig&) const = default;

  NoiseSchedule schedule() const;

  /// Throws ConfigError when values are out of their valid ranges.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` text grouped under `[section]` headers. Unknown
/// sections or keys are rejected; omitted keys keep their defaults.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& config, const std::string& path);

/// Applies one `section.key=value` override, e.g. from the command line.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace vidm
