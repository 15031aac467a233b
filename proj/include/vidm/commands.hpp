#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vidm/config.hpp"
#include "vidm/training.hpp"

namespace vidm {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitData = 3, kExitDivergence = 4 };

/// Options shared by every subcommand.
struct GlobalOptions {
  std::string config_path;             // empty: built-in defaults
  std::vector<std::string> overrides;  // "section.key=value"
  std::optional<uint64_t> seed;        // replaces every seed field of the config
  bool deterministic = false;          // single thread, deterministic kernels
};

/// Loads the config, applies overrides and the global seed, validates.
RunConfig resolve_config(const GlobalOptions& g);

/// Pins the floating-point execution mode for reproducible runs.
void apply_determinism(bool deterministic);

int cmd_gen_data(const RunConfig& config, const std::string& out_path, bool force,
                 std::ostream& out, std::ostream& err);

struct TrainArgs {
  std::string dataset;
  Stream stream = Stream::Content;
  std::string out_dir;
  std::string resume;  // checkpoint to continue from, optional
};

/// Writes <out_dir>/<stream>.ckpt (latest), <stream>_step<k>.ckpt every
/// ckpt_every steps and <stream>_loss.log.
int cmd_train(const RunConfig& config, const TrainArgs& args, std::ostream& out,
              std::ostream& err);

struct SampleArgs {
  std::string content_ckpt;
  std::string motion_ckpt;  // may be empty when frames == 1
  int64_t frames = 16;
  uint64_t seed = 0;
  std::string out_dir;
  bool raw = false;
  std::string trace_path;  // optional sampler trace
  int64_t clips = 0;       // > 0: also write that many clips as a dataset file
  std::string clips_path;
};

int cmd_sample(const RunConfig& config, const SampleArgs& args, std::ostream& out,
               std::ostream& err);

struct EvalArgs {
  std::string real;     // dataset file
  std::string fake;     // dataset file of generated clips; empty with split
  bool split = false;   // compare the two halves of the real set
  std::string report;   // key=value output file, optional
};

int cmd_eval(const RunConfig& config, const EvalArgs& args, std::ostream& out, std::ostream& err);

struct AblationRow {
  std::string variant;
  uint64_t seed = 0;
  int64_t frames = 0;
  double fvd = 0.0;
  double continuity = 0.0;
  double continuity_real = 0.0;
};

/// Flags of the rows default / no_posgn / no_implicit_latent / vanilla.
std::vector<std::pair<std::string, AblationFlags>> ablation_variants();

struct AblateArgs {
  std::string dataset;
  std::string out_dir;
  std::vector<uint64_t> seeds{1, 2, 3};
  int64_t long_frames = 32;  // matched-longer horizon
  std::string content_ckpt;  // reuse a trained content stream, optional
};

/// Trains each variant's motion stream under identical seeds and steps and
/// writes <out_dir>/ablation.csv with one row per (variant, seed, N).
int cmd_ablate(const RunConfig& config, const AblateArgs& args, std::ostream& out,
               std::ostream& err);

std::vector<AblationRow> read_ablation_csv(const std::string& path);

}  // namespace vidm
