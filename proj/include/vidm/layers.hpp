#pragma once

#include <torch/torch.h>

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace vidm {

/// Sinusoidal embedding of (possibly fractional) timesteps, shape (B, dim).
torch::Tensor timestep_embedding(const torch::Tensor& t, int64_t dim, double max_period = 10000.0);

/// Group count used throughout: min(8, channels), lowered until it divides.
int64_t default_groups(int64_t channels);

/// Normalized (h, w, n, t) coordinate, every component in [-1, 1].
struct Coordinate4D {
  double h = 0.0;
  double w = 0.0;
  double n = 0.0;
  double t = 0.0;
};

double normalize_frame_index(int64_t n, int64_t frames);
double normalize_timestep(int64_t t, int64_t T);

/// Builds the (h, w, n) part of a coordinate grid once per (H, W, n) and
/// hands out the cached copy afterwards; the diffusion timestep is appended
/// as a constant channel per call. Shared between the normalization layers of
/// one motion network; safe for concurrent readers.
class CoordinateCache {
 public:
  explicit CoordinateCache(size_t max_entries = 8192) : max_entries_(max_entries) {}

  /// Grid of shape (H, W, 4) with channels (h, w, n, t).
  torch::Tensor grid(int64_t H, int64_t W, int64_t n, int64_t frames, int64_t t, int64_t T);

  int64_t constructions() const { return constructions_.load(); }
  int64_t hits() const { return hits_.load(); }
  void clear();

 private:
  using Key = std::tuple<int64_t, int64_t, int64_t, int64_t>;
  size_t max_entries_;
  std::mutex mutex_;
  std::map<Key, torch::Tensor> grids_;
  std::atomic<int64_t> constructions_{0};
  std::atomic<int64_t> hits_{0};
};

/// Per-call coordinate context: one (n, t) pair per batch item plus the cache
/// that produces spatial grids at whatever resolution a layer runs at.
class CoordinateField {
 public:
  CoordinateField(CoordinateCache& cache, std::vector<int64_t> n, int64_t frames,
                  std::vector<int64_t> t, int64_t T, bool use_cache = true);

  /// (B, H, W, 4) grid for a feature map of spatial size H x W. Batched
  /// grids are memoized per resolution for the lifetime of the field.
  torch::Tensor grid(int64_t H, int64_t W) const;

  int64_t batch() const { return static_cast<int64_t>(n_.size()); }

  /// True when every item shares one (n, t), as in batched sampling.
  bool uniform() const;

 private:
  CoordinateCache* cache_;
  std::vector<int64_t> n_;
  int64_t frames_;
  std::vector<int64_t> t_;
  int64_t T_;
  bool use_cache_;
  mutable std::map<std::pair<int64_t, int64_t>, torch::Tensor> batched_;
};

/// Conditioning handed to every normalization layer. AdaGN reads `emb`,
/// PosGN reads `coords`.
struct Conditioning {
  torch::Tensor emb;
  const CoordinateField* coords = nullptr;
};

/// Two-layer perceptron on 4D coordinates with a sine after the first layer
/// only: out = W2 sin(omega (W1 x + b1)) + b2, split into (alpha, beta).
/// The second layer starts at zero weight with bias (1, 0) so the modulation
/// is the identity at initialization.
class SineCoordMLPImpl : public torch::nn::Module {
 public:
  SineCoordMLPImpl(int64_t channels, int64_t hidden, double omega);

  /// coords (..., 4) -> (alpha, beta), each (..., channels).
  std::pair<torch::Tensor, torch::Tensor> forward(const torch::Tensor& coords);

  int64_t channels() const { return channels_; }
  double omega() const { return omega_; }

  torch::nn::Linear first{nullptr};
  torch::nn::Linear second{nullptr};

 private:
  int64_t channels_;
  double omega_;
};
TORCH_MODULE(SineCoordMLP);

/// Positional group normalization: alpha * GroupNorm(x) + beta with
/// (alpha, beta) predicted per pixel from the (h, w, n, t) grid.
class PosGNImpl : public torch::nn::Module {
 public:
  PosGNImpl(int64_t channels, int64_t groups, int64_t hidden, double omega);

  torch::Tensor forward(const torch::Tensor& x, const Conditioning& cond);

  /// Same modulation with an explicit (B, H, W, 4) grid.
  torch::Tensor forward_grid(const torch::Tensor& x, const torch::Tensor& grid);

  int64_t groups() const { return groups_; }
  SineCoordMLP mlp{nullptr};

 private:
  int64_t channels_;
  int64_t groups_;
};
TORCH_MODULE(PosGN);

/// Adaptive group normalization: GroupNorm(x) * (1 + scale) + shift with
/// (scale, shift) projected from an embedding.
class AdaGNImpl : public torch::nn::Module {
 public:
  AdaGNImpl(int64_t channels, int64_t groups, int64_t emb_dim);
  torch::Tensor forward(const torch::Tensor& x, const Conditioning& cond);

 private:
  int64_t channels_;
  int64_t groups_;
  torch::nn::Linear proj{nullptr};
};
TORCH_MODULE(AdaGN);

enum class NormKind {
  Plain,  // GroupNorm with learned per-channel affine
  AdaGN,
  PosGN,
};

/// One normalization slot of a network; the kind is fixed at construction.
class NormImpl : public torch::nn::Module {
 public:
  NormImpl(NormKind kind, int64_t channels, int64_t emb_dim, int64_t posgn_hidden,
           double omega);
  torch::Tensor forward(const torch::Tensor& x, const Conditioning& cond);
  NormKind kind() const { return kind_; }

 private:
  NormKind kind_;
  torch::nn::GroupNorm plain{nullptr};
  AdaGN ada{nullptr};
  PosGN pos{nullptr};
};
TORCH_MODULE(Norm);

}  // namespace vidm
