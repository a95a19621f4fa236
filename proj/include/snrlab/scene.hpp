#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "snrlab/noise_model.hpp"
#include "snrlab/walsh_hadamard.hpp"

namespace snrlab {

// Nonnegative per-pixel photon intensities. brightness() is the sum of the
// entries (X0), computed once at construction.
class SceneVector {
 public:
  SceneVector() = default;
  explicit SceneVector(std::vector<double> pixels);

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  double brightness() const noexcept { return brightness_; }

  // Every pixel multiplied by `gain`.
  SceneVector scaled(double gain) const;

 private:
  std::vector<double> pixels_;
  double brightness_ = 0.0;
};

/// Multinomial allocation of x0 photons over n equiprobable pixels, by
/// recursive binomial halving. Conserves x0 exactly.
SceneVector random_uniform_scene(TransformSize n, std::int64_t x0, RandomStream& stream);

SceneVector flat_scene(TransformSize n, double x0);

// 8- or 16-bit binary PGM (P5).
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  // row-major
};

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image, unsigned maxval = 255);

// Shape of the pixel grid used for an operator of size n: width 2^ceil(k/2),
// height 2^floor(k/2) with n = 2^k.
struct GridShape {
  std::size_t width;
  std::size_t height;
};
GridShape grid_shape(TransformSize n);

/// Area-average downsampling of an image onto grid_shape(n).
std::vector<double> downsample_area(const GrayImage& image, GridShape shape);

/// Reads a PGM, downsamples to n pixels, rescales to total brightness x0.
SceneVector scene_from_image(const std::filesystem::path& path, TransformSize n, double x0);
SceneVector scene_from_image(const GrayImage& image, TransformSize n, double x0);

}  // namespace snrlab
