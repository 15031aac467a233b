#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <vector>

#include "vidm/config.hpp"

namespace vidm {

/// Adaptive-moment gradient descent with global gradient-norm clipping.
/// Moment buffers are plain tensors so they serialize alongside parameters.
class Adam {
 public:
  Adam(std::vector<torch::Tensor> params, const OptimConfig& cfg);

  /// Drops gradients (set to undefined, not zero).
  void zero_grad();

  /// Clips the global gradient norm, applies one update and returns the
  /// pre-clip norm. Parameters without a gradient are left untouched. Throws
  /// std::domain_error, without updating, when the norm is not finite.
  double step();

  const std::vector<torch::Tensor>& params() const { return params_; }
  std::vector<torch::Tensor>& exp_avg() { return m_; }
  std::vector<torch::Tensor>& exp_avg_sq() { return v_; }
  const std::vector<torch::Tensor>& exp_avg() const { return m_; }
  const std::vector<torch::Tensor>& exp_avg_sq() const { return v_; }
  int64_t updates() const { return updates_; }
  void set_updates(int64_t n) { updates_ = n; }
  double lr() const { return cfg_.lr; }

 private:
  std::vector<torch::Tensor> params_;
  std::vector<torch::Tensor> m_, v_;
  OptimConfig cfg_;
  int64_t updates_ = 0;
};

}  // namespace vidm
