#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <vector>

#include "vidm/data.hpp"

namespace vidm {

/// Gaussian fit of clip features: mean (D), population covariance (D, D),
/// both float64.
struct FeatureStats {
  torch::Tensor mu;
  torch::Tensor sigma;
  int64_t count = 0;

  int64_t dim() const { return mu.size(0); }
  /// Throws if sigma is not symmetric PSD (eigenvalues >= -1e-8) or count < 2.
  void validate() const;
};

/// Fixed random spatiotemporal conv net: C -> 64 -> 128 -> D with strides
/// (1,2,2), (2,2,2), (2,2,2), LeakyReLU(0.2), then global average pooling.
/// Weights depend only on (seed, C, D).
class FeatureExtractor {
 public:
  FeatureExtractor(int64_t channels, uint64_t seed, int64_t dim = 256);

  /// videos (B, N, C, H, W) -> features (B, D), float64.
  torch::Tensor features(const torch::Tensor& videos) const;
  int64_t dim() const { return dim_; }

 private:
  int64_t channels_, dim_;
  std::vector<torch::Tensor> weights_;
};

FeatureStats feature_stats(const torch::Tensor& features);

/// videos stacked as (B, N, C, H, W).
FeatureStats extract_features(const torch::Tensor& videos, uint64_t extractor_seed,
                              int64_t dim = 256);
FeatureStats extract_features(const std::vector<VideoClip>& clips, uint64_t extractor_seed,
                              int64_t dim = 256);

/// ||mu_a - mu_b||^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}).
double frechet_distance(const FeatureStats& a, const FeatureStats& b);

double fvd_proxy(const torch::Tensor& real, const torch::Tensor& fake, uint64_t extractor_seed,
                 int64_t dim = 256);

inline constexpr double kPsnrCap = 99.0;

/// PSNR in dB for values in [-1, 1] (peak-to-peak 2), capped at 99 dB.
double frame_psnr(const torch::Tensor& a, const torch::Tensor& b);

/// Mean over n of mean |frame n - frame n-1|; clip is (N, ...).
double continuity_score(const torch::Tensor& clip);

/// Mean continuity_score over a (B, N, ...) stack.
double mean_continuity(const torch::Tensor& videos);

}  // namespace vidm
