#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <vector>

#include "vidm/layers.hpp"

namespace vidm {

/// Architecture of one U-Net. `modulated` selects the conditioning norm
/// (AdaGN for timestep-embedding conditioning, PosGN for coordinate
/// conditioning). In PosGN mode every normalization slot is PosGN and no
/// timestep embedding is built.
struct UNetConfig {
  int64_t in_channels = 3;
  int64_t out_channels = 3;
  int64_t base_width = 64;
  std::vector<int64_t> channel_mult{1, 2, 2};
  int64_t res_blocks = 2;
  int64_t resolution = 32;       // nominal input side length
  int64_t attn_resolution = 16;  // feature-map side length that gets attention; 0 disables
  int64_t heads = 4;
  NormKind modulated = NormKind::AdaGN;
  int64_t posgn_hidden = 32;
  double omega = 30.0;
  bool zero_init_output = true;
};

class ResBlockImpl : public torch::nn::Module {
 public:
  ResBlockImpl(int64_t in_ch, int64_t out_ch, const UNetConfig& cfg, int64_t emb_dim);
  torch::Tensor forward(const torch::Tensor& x, const Conditioning& cond);

 private:
  Norm norm1{nullptr}, norm2{nullptr};
  torch::nn::Conv2d conv1{nullptr}, conv2{nullptr};
  torch::nn::Conv2d skip{nullptr};
};
TORCH_MODULE(ResBlock);

/// Multi-head self-attention over the spatial positions of a feature map.
class AttentionBlockImpl : public torch::nn::Module {
 public:
  AttentionBlockImpl(int64_t channels, int64_t heads, const UNetConfig& cfg, int64_t emb_dim);
  torch::Tensor forward(const torch::Tensor& x, const Conditioning& cond);

 private:
  int64_t channels_, heads_;
  Norm norm{nullptr};
  torch::nn::Conv2d qkv{nullptr}, proj{nullptr};
};
TORCH_MODULE(AttentionBlock);

class UNetImpl : public torch::nn::Module {
 public:
  explicit UNetImpl(UNetConfig cfg);

  /// `t` holds one raw diffusion timestep per item; it feeds the timestep
  /// embedding in AdaGN mode and is ignored in PosGN mode (the coordinate
  /// field already carries t).
  torch::Tensor forward(const torch::Tensor& x, const torch::Tensor& t,
                        const CoordinateField* coords = nullptr);

  const UNetConfig& config() const { return cfg_; }
  bool uses_embedding() const { return emb_dim_ > 0; }

  torch::nn::Conv2d conv_out{nullptr};

 private:
  struct Stage {
    std::vector<ResBlock> blocks;
    std::vector<AttentionBlock> attn;  // parallel to blocks; null where unused
    torch::nn::Conv2d resample{nullptr};
  };

  UNetConfig cfg_;
  int64_t emb_dim_ = 0;
  torch::nn::Linear emb1{nullptr}, emb2{nullptr};
  torch::nn::Conv2d conv_in{nullptr};
  std::vector<Stage> down_, up_;
  ResBlock mid1{nullptr}, mid2{nullptr};
  AttentionBlock mid_attn{nullptr};
  Norm norm_out{nullptr};
};
TORCH_MODULE(UNet);

}  // namespace vidm
