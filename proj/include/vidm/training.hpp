#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vidm/config.hpp"
#include "vidm/data.hpp"
#include "vidm/diffusion.hpp"
#include "vidm/models.hpp"
#include "vidm/optim.hpp"

namespace vidm {

enum class Stream { Content, Motion };

std::string to_string(Stream s);
Stream parse_stream(const std::string& s);

/// Raised when a step produces a non-finite loss; training is aborted, never
/// clamped.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int64_t step, const std::string& detail)
      : std::runtime_error("training diverged at step " + std::to_string(step) + ": " + detail),
        step_(step) {}
  int64_t step() const { return step_; }

 private:
  int64_t step_;
};

/// Loss settings shared by both streams.
struct ObjectiveOptions {
  double eta = 1e-8;
  bool robust = true;  // false: plain L1 (robustness-penalty ablation)
  bool implicit_latent = true;
  bool residual = true;

  static ObjectiveOptions from_config(const RunConfig& config);
};

/// Mutable state of one stream's optimization. The optimizer only holds the
/// parameters owned by `stream` (content: theta and c; motion: phi, rho_hat, v).
struct TrainState {
  ModelBundle bundle;
  Stream stream = Stream::Content;
  std::unique_ptr<Adam> optimizer;
  int64_t step = 0;
  uint64_t rng_seed = 0;
  double running_loss = 0.0;
  bool has_running_loss = false;

  static TrainState create(ModelBundle bundle, Stream stream, const OptimConfig& optim,
                           uint64_t seed);
};

/// Parameters a stream is allowed to update.
std::vector<torch::Tensor> stream_parameters(const ModelBundle& bundle, Stream stream);

/// Content objective on explicit (t, eps): robust or L1 loss between
/// eps_theta(q_sample(x0, t, eps), c, t) and eps.
LossValue content_objective(ModelBundle& bundle, const torch::Tensor& x0,
                            const std::vector<int64_t>& t, const torch::Tensor& eps,
                            const NoiseSchedule& schedule, const ObjectiveOptions& opts);

/// Motion objective on explicit (t, eps): loss between rho_phi(x(n)_t, z) + r
/// and eps with z = v(x0, xprev) and r = rho_hat(x0, t).
LossValue motion_objective(ModelBundle& bundle, const TripletBatch& batch,
                           const std::vector<int64_t>& t, const torch::Tensor& eps,
                           const NoiseSchedule& schedule, const ObjectiveOptions& opts);

/// Per-step randomness: t ~ Uniform{1..T} and eps ~ N(0, I) per item, drawn
/// from a generator seeded by (seed, stream, step).
struct StepNoise {
  std::vector<int64_t> t;
  torch::Tensor eps;
};
StepNoise draw_step_noise(const TrainState& state, const torch::Tensor& like, int64_t T);

LossValue train_content_step(const torch::Tensor& batch, TrainState& state,
                             const NoiseSchedule& schedule, const ObjectiveOptions& opts);

LossValue train_motion_step(const TripletBatch& batch, TrainState& state,
                            const NoiseSchedule& schedule, const ObjectiveOptions& opts);

/// Hooks invoked by fit(); any of them may be empty.
struct FitHooks {
  std::function<void(const TrainState&)> checkpoint;
  std::ostream* log = nullptr;
};

/// Runs the stream's step function until config.train.max_steps, resuming
/// from `state.step`. Checkpoints every config.train.ckpt_every steps.
void fit(const RunConfig& config, const Dataset& dataset, TrainState& state,
         const FitHooks& hooks = {});

/// Fresh bundle + state for a config, then fit().
TrainState fit(const RunConfig& config, const Dataset& dataset, Stream stream,
               const FitHooks& hooks = {});

}  // namespace vidm
