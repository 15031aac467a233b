#pragma once

#include <torch/torch.h>

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "vidm/config.hpp"
#include "vidm/layers.hpp"
#include "vidm/unet.hpp"

namespace vidm {

/// Flow-like latent z = v(x0, xprev), shape (B, L, H', W').
struct MotionLatent {
  torch::Tensor value;
  std::vector<int64_t> source_pair;  // frame indices (first, previous) when known
};

struct ResidualFeature {
  torch::Tensor value;
};

/// Geometry and architecture shared by the networks of one run.
struct NetSpec {
  int64_t channels = 3;
  int64_t height = 32;
  int64_t width = 32;
  int64_t frames = 16;  // horizon used to normalize the frame index
  int64_t T = 200;
  ModelConfig model;
  AblationFlags ablation;

  static NetSpec from_config(const RunConfig& config);
};

/// MLP noise predictor for flat vector data (B, D); the vector counterpart of
/// the U-Net used for frames.
class VectorDenoiserImpl : public torch::nn::Module {
 public:
  VectorDenoiserImpl(int64_t in_dim, int64_t out_dim, int64_t hidden, int64_t layers);
  torch::Tensor forward(const torch::Tensor& x, const torch::Tensor& t);

 private:
  int64_t hidden_;
  torch::nn::Sequential body{nullptr};
  torch::nn::Linear time_proj{nullptr};
  torch::nn::Linear in_proj{nullptr};
  torch::nn::Linear out{nullptr};
};
TORCH_MODULE(VectorDenoiser);

/// Content stream: eps_theta(x_t, c, t) with the learnable truncation constant
/// c concatenated to the noisy input along the channel axis.
class ContentDenoiserImpl : public torch::nn::Module {
 public:
  /// Frame mode: U-Net over (C, H, W) samples.
  explicit ContentDenoiserImpl(const NetSpec& spec);
  /// Vector mode: MLP over (D) samples.
  ContentDenoiserImpl(int64_t dim, int64_t hidden, int64_t layers, bool truncation);

  /// xt: (B, ...sample_shape), t: one timestep per item.
  torch::Tensor forward(const torch::Tensor& xt, const std::vector<int64_t>& t);

  /// Explicit-constant form used to probe the conditioning on c.
  torch::Tensor forward_with_constant(const torch::Tensor& xt, const torch::Tensor& c,
                                      const std::vector<int64_t>& t);

  bool truncation() const { return truncation_; }
  const std::vector<int64_t>& sample_shape() const { return sample_shape_; }

  torch::Tensor c;  // same shape as one sample
  UNet unet{nullptr};
  VectorDenoiser mlp{nullptr};

  int64_t calls() const { return calls_.load(); }

 private:
  bool truncation_ = true;
  std::vector<int64_t> sample_shape_;
  std::atomic<int64_t> calls_{0};
};
TORCH_MODULE(ContentDenoiser);

/// SpyNet-style coarse-to-fine latent encoder v(x0, xprev). Level k runs on
/// both frames average-pooled by stride * 2^k and refines the bilinearly
/// upsampled latent of the coarser level by a predicted residual.
class LatentEncoderImpl : public torch::nn::Module {
 public:
  LatentEncoderImpl(int64_t channels, int64_t latent_channels, int64_t width, int64_t levels,
                    int64_t stride);

  MotionLatent forward(const torch::Tensor& x0, const torch::Tensor& xprev);

  int64_t calls() const { return calls_.load(); }
  void reset_calls() { calls_ = 0; }
  int64_t latent_channels() const { return latent_channels_; }

 private:
  int64_t latent_channels_, levels_, stride_;
  std::vector<torch::nn::Sequential> level_nets_;  // index 0 = finest
  std::atomic<int64_t> calls_{0};
};
TORCH_MODULE(LatentEncoder);

/// Adaptive feature residual encoder rho_hat(x0, t): a U-Net of the same
/// family as the denoisers whose zero-initialized head makes r = 0 at init.
class ResidualEncoderImpl : public torch::nn::Module {
 public:
  explicit ResidualEncoderImpl(const NetSpec& spec);
  ResidualFeature forward(const torch::Tensor& x0, const std::vector<int64_t>& t);

  UNet unet{nullptr};
  int64_t calls() const { return calls_.load(); }
  void reset_calls() { calls_ = 0; }

 private:
  int64_t T_;
  std::atomic<int64_t> calls_{0};
};
TORCH_MODULE(ResidualEncoder);

/// Motion denoiser rho_phi(x(n)_t, z) with every normalization driven by the
/// (h, w, n, t) coordinate grid (or by a timestep embedding when PosGN is
/// ablated).
class MotionDenoiserImpl : public torch::nn::Module {
 public:
  explicit MotionDenoiserImpl(const NetSpec& spec);

  torch::Tensor forward(const torch::Tensor& xnt, const torch::Tensor& z,
                        const std::vector<int64_t>& t, const std::vector<int64_t>& n);

  UNet unet{nullptr};
  CoordinateCache& coordinate_cache() { return cache_; }
  int64_t calls() const { return calls_.load(); }
  void reset_calls() { calls_ = 0; }
  bool uses_posgn() const { return posgn_; }
  /// Bypass the shared coordinate cache (grids rebuilt every call).
  void set_use_cache(bool on) { use_cache_ = on; }

 private:
  int64_t frames_, T_, latent_channels_;
  bool posgn_;
  bool use_cache_ = true;
  CoordinateCache cache_;
  std::atomic<int64_t> calls_{0};
};
TORCH_MODULE(MotionDenoiser);

/// The three learned pieces of the motion stream.
class MotionModelImpl : public torch::nn::Module {
 public:
  explicit MotionModelImpl(const NetSpec& spec);

  MotionDenoiser rho{nullptr};
  ResidualEncoder rho_hat{nullptr};
  LatentEncoder v{nullptr};
  const NetSpec& spec() const { return spec_; }

 private:
  NetSpec spec_;
};
TORCH_MODULE(MotionModel);

/// Parameters of both streams. Parameter counts are fixed after construction.
struct ModelBundle {
  NetSpec spec;
  ContentDenoiser content{nullptr};
  MotionModel motion{nullptr};

  static ModelBundle create(const NetSpec& spec);
  /// Content-only bundle over flat D-dimensional samples (no motion stream).
  static ModelBundle create_vector(int64_t dim, int64_t T, int64_t hidden, int64_t layers,
                                   bool truncation, uint64_t init_seed);

  std::vector<torch::Tensor> theta() const;  // content network without c
  std::vector<torch::Tensor> phi() const;
  std::vector<torch::Tensor> rho_hat() const;
  std::vector<torch::Tensor> v_params() const;

  void train(bool on);
  void to(torch::Dtype dtype);
};

/// eps_theta(x_t, c, t) on a single step index shared by the batch.
torch::Tensor eps_forward(ModelBundle& bundle, const torch::Tensor& xt, int64_t t);

MotionLatent latent_encode(ModelBundle& bundle, const torch::Tensor& x0,
                           const torch::Tensor& xprev);
ResidualFeature residual_encode(ModelBundle& bundle, const torch::Tensor& x0, int64_t t);
torch::Tensor motion_forward(ModelBundle& bundle, const torch::Tensor& xnt,
                             const MotionLatent& z, int64_t t, int64_t n);

}  // namespace vidm
