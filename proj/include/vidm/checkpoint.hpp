#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vidm/config.hpp"
#include "vidm/training.hpp"

namespace vidm {

inline constexpr uint32_t kCheckpointVersion = 1;

/// Decoded "VIDC" container. Blocks are named tensors: "content.*" and
/// "motion.*" parameters, "adam.m.<i>" / "adam.v.<i>" optimizer moments and
/// "schedule.beta".
struct Checkpoint {
  uint32_t version = kCheckpointVersion;
  RunConfig config;
  Stream stream = Stream::Content;
  int64_t step = 0;
  uint64_t rng_seed = 0;
  double running_loss = 0.0;
  bool has_running_loss = false;
  int64_t adam_updates = 0;
  std::vector<std::pair<std::string, torch::Tensor>> blocks;

  const torch::Tensor* find(const std::string& name) const;
};

/// Layout: "VIDC", u32 version, u32-length config text, stream, step, seed,
/// running loss, optimizer update count, then u32 block count and per block
/// (u32 name length, name, u8 dtype [0 = f32, 1 = f64], u32 rank, i64 dims,
/// little-endian payload). Written to a temporary file and renamed.
void save_checkpoint(const TrainState& state, const RunConfig& config, const std::string& path);
Checkpoint read_checkpoint(const std::string& path);

/// Copies blocks whose name starts with `prefix` ("content." or "motion.")
/// into the matching bundle parameters. Throws on missing or mis-shaped
/// blocks.
void load_parameters(ModelBundle& bundle, const Checkpoint& ckpt, const std::string& prefix);

/// Rebuilds the full training state (parameters, optimizer moments, step,
/// RNG seed, running loss) saved by save_checkpoint.
TrainState restore_state(const Checkpoint& ckpt);

/// Bundle for sampling: content parameters from one checkpoint and motion
/// parameters from another. Frame geometry must agree.
ModelBundle load_sampling_bundle(const std::string& content_path, const std::string& motion_path);

}  // namespace vidm
