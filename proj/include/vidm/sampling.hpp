#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vidm/data.hpp"
#include "vidm/diffusion.hpp"
#include "vidm/models.hpp"

namespace vidm {

/// Per-frame, per-timestep record of a generation run.
struct SamplerTrace {
  struct Record {
    int64_t n = 0;
    int64_t t = 0;
    uint64_t seed = 0;      // seed of the generator that produced this frame's noise
    torch::Tensor snapshot;  // x(n)_{t-1} of the first clip, when snapshots are on
  };
  bool snapshots = false;
  std::vector<Record> records;
};

/// Trace file: magic "VIDM", format version, N, C, H, W, T, then one record
/// per (frame, timestep).
void write_trace(const SamplerTrace& trace, int64_t N, int64_t C, int64_t H, int64_t W, int64_t T,
                 const std::string& path);
SamplerTrace read_trace(const std::string& path);

/// Seed of the generator used for frame n of a clip seeded with `seed`.
inline uint64_t frame_seed(uint64_t seed, int64_t n) { return seed ^ static_cast<uint64_t>(n); }

using EpsFn = std::function<torch::Tensor(const torch::Tensor& xt, int64_t t)>;
using NoiseFn = std::function<torch::Tensor(int64_t t)>;
using StepHook = std::function<void(int64_t t, const torch::Tensor& x_prev_step)>;

/// Reverse chain t = T..1 from x_T with caller-supplied predictor and noise.
torch::Tensor run_reverse_chain(torch::Tensor xT, const NoiseSchedule& schedule, const EpsFn& eps,
                                const NoiseFn& noise, const StepHook& hook = {});

/// Independent noise stream per clip: x_T and then one draw per step.
class FrameNoise {
 public:
  FrameNoise(const std::vector<uint64_t>& seeds, std::vector<int64_t> sample_shape);
  torch::Tensor next();

 private:
  std::vector<at::Generator> gens_;
  std::vector<int64_t> shape_;
};

/// Content frame (C, H, W) from x_T ~ N(0, I) using the fixed learned c.
torch::Tensor sample_content(ModelBundle& bundle, const NoiseSchedule& schedule, uint64_t seed);

/// Batched content frames; item i is seeded by seeds[i].
torch::Tensor sample_content_batch(ModelBundle& bundle, const NoiseSchedule& schedule,
                                   const std::vector<uint64_t>& seeds, SamplerTrace* trace = nullptr);

/// Frame n from (x0, xprev): z computed once and reused for all T steps; r
/// recomputed per step; prediction rho_phi(x(n)_t, z) + r. Inputs are single
/// frames (C, H, W). n past the trained horizon is clamped for the network.
torch::Tensor sample_next_frame(ModelBundle& bundle, const torch::Tensor& x0,
                                const torch::Tensor& xprev, int64_t n,
                                const NoiseSchedule& schedule, uint64_t seed);

/// Batched frame n: x0 / xprev are (B, C, H, W); item i uses seeds[i].
torch::Tensor sample_next_frame_batch(ModelBundle& bundle, const torch::Tensor& x0,
                                      const torch::Tensor& xprev, int64_t n,
                                      const NoiseSchedule& schedule,
                                      const std::vector<uint64_t>& seeds,
                                      SamplerTrace* trace = nullptr);

struct GenerateOptions {
  /// Debug mode: condition frame n on the reference clip's frames 0 and n-1
  /// instead of generated ones. Frame 0 of the output is the reference frame.
  const torch::Tensor* teacher = nullptr;  // (B, N', C, H, W) with N' >= N
  /// Use these first frames (B, C, H, W) instead of sampling the content stream.
  std::optional<torch::Tensor> first_frames;
  SamplerTrace* trace = nullptr;
};

/// Autoregressive generation of clips; returns (B, N, C, H, W). Clip i is
/// seeded by seeds[i]; frame n of that clip uses frame_seed(seeds[i], n).
/// Beyond the trained horizon the frame index fed to the motion network is
/// held at its last trained value.
torch::Tensor generate_videos(ModelBundle& bundle, int64_t N, const NoiseSchedule& schedule,
                              const std::vector<uint64_t>& seeds, const GenerateOptions& opts = {});

VideoClip generate_video(ModelBundle& bundle, int64_t N, const NoiseSchedule& schedule,
                         uint64_t seed, SamplerTrace* trace = nullptr);

}  // namespace vidm
