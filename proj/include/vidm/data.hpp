#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vidm {

/// An N-frame clip, frames shaped (N, C, H, W) with values in [-1, 1].
struct VideoClip {
  torch::Tensor frames;
  double fps_hint = 8.0;

  int64_t length() const { return frames.size(0); }
  torch::Tensor frame(int64_t n) const { return frames[n]; }
};

enum class ShapeKind { Circle, Square };

struct ShapeSpec {
  ShapeKind kind = ShapeKind::Circle;
  double radius = 3.0;  // half side length for squares
  double color[3] = {1.0, 1.0, 1.0};
  double x = 0.0, y = 0.0;
  double vx = 0.0, vy = 0.0;
};

inline constexpr uint32_t kGeneratorVersion = 1;

struct DatasetManifest {
  int64_t video_count = 0;
  int64_t N = 0, C = 0, H = 0, W = 0;
  uint64_t seed = 0;
  uint32_t generator_version = kGeneratorVersion;
  std::vector<uint64_t> offsets;  // byte offset of each video inside the file
};

/// Videos stored as one (V, N, C, H, W) float32 tensor.
struct Dataset {
  DatasetManifest manifest;
  torch::Tensor videos;

  int64_t size() const { return videos.size(0); }
  VideoClip clip(int64_t i) const { return {videos[i], 8.0}; }
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Moves every shape one frame forward with elastic reflection at the walls.
void advance_shape(ShapeSpec& s, int64_t H, int64_t W);

/// Anti-aliased rendering of shapes over a black (-1) background.
torch::Tensor render_frame(const std::vector<ShapeSpec>& shapes, int64_t C, int64_t H, int64_t W);

/// Renders N frames from explicit initial shape states.
torch::Tensor render_clip(std::vector<ShapeSpec> shapes, int64_t N, int64_t C, int64_t H,
                          int64_t W);

struct BouncingShapesOptions {
  int64_t count = 256;
  int64_t N = 16;
  int64_t C = 3;
  int64_t H = 32;
  int64_t W = 32;
  int64_t shapes_per_video = 2;  // upper bound; each video draws 1..K
  double min_speed = 0.5;
  double max_speed = 2.0;
  double min_radius = 2.5;
  double max_radius = 0.0;  // 0 -> min(H, W) / 6
  uint64_t seed = 7;
};

Dataset gen_bouncing_shapes(const BouncingShapesOptions& opts);

void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

/// Human-readable `key=value` mirror of a manifest.
std::string manifest_text(const DatasetManifest& m);

struct FrameTriplet {
  torch::Tensor x0, xprev, xn;
  int64_t n = 1;
};

/// Draws n ~ Uniform{1..N-1} and returns (frame 0, frame n-1, frame n, n).
FrameTriplet sample_triplet(const VideoClip& video, std::mt19937_64& rng);

/// Stacked triplets: (B, C, H, W) tensors plus per-item n.
struct TripletBatch {
  torch::Tensor x0, xprev, xn;
  std::vector<int64_t> n;
  int64_t size() const { return x0.size(0); }
};

TripletBatch stack_triplets(const std::vector<FrameTriplet>& items);

enum class BatchMode { Frames, Triplets };

/// Deterministic batch source: the batch for a given step depends only on
/// (seed, step), which makes resumed training see the same data stream.
/// Frames mode walks an epoch-seeded permutation of all (video, frame)
/// pairs; triplets mode walks a permutation of videos (distinct videos within
/// a batch whenever the dataset is large enough) and applies sample_triplet.
class BatchSampler {
 public:
  BatchSampler(const Dataset& dataset, int64_t batch_size, BatchMode mode, uint64_t seed,
               bool flip = false);

  torch::Tensor frames(int64_t step);
  TripletBatch triplets(int64_t step);

  /// Index pairs (video, frame) for a frames-mode batch.
  std::vector<std::pair<int64_t, int64_t>> frame_indices(int64_t step);

 private:
  const std::vector<int64_t>& epoch_perm(int64_t epoch);
  int64_t pool_size() const;

  const Dataset* dataset_;
  int64_t batch_size_;
  BatchMode mode_;
  uint64_t seed_;
  bool flip_;
  int64_t cached_epoch_ = -1;
  std::vector<int64_t> perm_;
};

/// splitmix64-style mixing of seed words into one RNG seed.
uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c = 0);

}  // namespace vidm
