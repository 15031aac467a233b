#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <string>
#include <vector>

namespace vidm {

/// 8-bit interleaved RGB image.
struct RgbImage {
  int64_t width = 0;
  int64_t height = 0;
  std::vector<uint8_t> pixels;  // height * width * 3
};

/// Maps a (C, H, W) frame with values in [-1, 1] to RGB; values outside the
/// range are clamped, single-channel frames become grey.
RgbImage to_rgb(const torch::Tensor& frame);

void write_png(const RgbImage& image, const std::string& path);
RgbImage read_png(const std::string& path);

/// Looping animated GIF with a fixed 6x6x6 color cube palette.
void write_gif(const std::vector<RgbImage>& frames, double fps, const std::string& path);

/// Raw little-endian float32 dump preceded by the rank and dims (i64 each).
void write_raw(const torch::Tensor& tensor, const std::string& path);

/// Writes frame_000.png ... into `dir`, plus clip.gif when the clip has more
/// than one frame and clip.raw when `raw` is set. Returns the written paths.
std::vector<std::string> export_clip(const torch::Tensor& clip, double fps, const std::string& dir,
                                     bool raw = false);

}  // namespace vidm
