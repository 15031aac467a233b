#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace vidm {

/// Per-timestep coefficients of a discrete Gaussian diffusion.
///
/// Timesteps are 1-indexed: coefficient `t` lives at vector index `t - 1`.
/// All values are kept in double precision; tensor arithmetic casts them to
/// the dtype of the operand.
struct NoiseSchedule {
  int64_t T = 0;
  std::vector<double> beta;
  std::vector<double> alpha;
  std::vector<double> alpha_bar;
  std::vector<double> sigma;

  double beta_at(int64_t t) const { return beta.at(index(t)); }
  double alpha_at(int64_t t) const { return alpha.at(index(t)); }
  double alpha_bar_at(int64_t t) const { return alpha_bar.at(index(t)); }
  double sigma_at(int64_t t) const { return sigma.at(index(t)); }

  /// Throws std::out_of_range unless 1 <= t <= T.
  void check_timestep(int64_t t) const;

  /// Throws std::invalid_argument if any structural invariant is broken.
  void validate() const;

 private:
  size_t index(int64_t t) const {
    check_timestep(t);
    return static_cast<size_t>(t - 1);
  }
};

/// How the reverse-step noise scale is derived from beta.
enum class SigmaKind {
  Beta,       // sigma_t = sqrt(beta_t)
  Posterior,  // sigma_t = sqrt(beta_t (1 - abar_{t-1}) / (1 - abar_t))
};

/// Linear beta ramp from beta_start to beta_end (inclusive). With
/// `deterministic_last`, sigma_1 is forced to zero so the final reverse step
/// adds no noise.
NoiseSchedule make_linear_schedule(int64_t T, double beta_start, double beta_end,
                                   bool deterministic_last,
                                   SigmaKind sigma_kind = SigmaKind::Beta);

struct NoisySample {
  torch::Tensor value;
  int64_t t = 0;
};

/// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps.
NoisySample q_sample(const torch::Tensor& x0, int64_t t, const torch::Tensor& eps,
                     const NoiseSchedule& schedule);

/// Batched forward noising with one timestep per leading-dimension item.
torch::Tensor q_sample_batch(const torch::Tensor& x0, const std::vector<int64_t>& t,
                             const torch::Tensor& eps, const NoiseSchedule& schedule);

/// One ancestral step x_t -> x_{t-1}. `noise` is supplied by the caller so the
/// randomness source stays outside this function.
torch::Tensor reverse_step(const torch::Tensor& xt, const torch::Tensor& eps_pred, int64_t t,
                           const NoiseSchedule& schedule, const torch::Tensor& noise);

struct LossValue {
  torch::Tensor scalar;  // 0-dim, mean over elements; keeps the autograd graph
  std::optional<torch::Tensor> per_element;

  double item() const { return scalar.item<double>(); }
};

LossValue l1_loss(const torch::Tensor& pred, const torch::Tensor& target,
                  bool keep_elements = false);

/// Charbonnier penalty sqrt((pred - target)^2 + eta^2), mean-reduced.
LossValue charbonnier_loss(const torch::Tensor& pred, const torch::Tensor& target, double eta,
                           bool keep_elements = false);

}  // namespace vidm
