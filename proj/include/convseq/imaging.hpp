#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "convseq/config.hpp"

namespace convseq {

// Row-major 2-D grid. Width is the fast axis.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
  const T& operator()(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<const T> row(std::size_t y) const { return {data_.data() + y * width_, width_}; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

// 8-bit luminance.
using GrayImage = Grid<std::uint8_t>;

// A decoded image as it comes off disk: 1 (gray) or 3 (RGB, interleaved)
// channels of 8-bit samples.
struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  std::vector<std::uint8_t> samples;
};

struct GradientMap {
  Grid<double> magnitude;
  Grid<double> orientation;  // degrees in [0, 180); 0 where magnitude is 0
};

struct EntropyMap {
  Grid<double> values;  // bits, each in [0, 8]
};

// Luminance at native resolution: (299 R + 587 G + 114 B) / 1000, rounded.
GrayImage to_luminance(const Raster& raster);

// Bilinear resampling with pixel-centre alignment and edge clamping; results
// are rounded to the nearest integer. Same-size input is returned unchanged.
GrayImage resize_bilinear(const GrayImage& src, std::size_t width, std::size_t height);

// Luminance then resize to image_width x image_height. Throws Error{Decode} on
// empty or malformed rasters.
GrayImage standardize(const Raster& raster, const PipelineConfig& cfg);

// Central differences [-1, 0, 1] with replicated edges; orientation is the
// unsigned gradient angle.
GradientMap compute_gradients(const GrayImage& img);

// Shannon entropy of the 256-bin intensity histogram over the square window of
// half-width `radius` around each pixel, clipped at the image border.
EntropyMap compute_entropy_map(const GrayImage& img, std::size_t radius);
EntropyMap compute_entropy_map(const GrayImage& img, const PipelineConfig& cfg);

// Sum of all entropy values divided by width * height * 8.
double image_entropy_scalar(const EntropyMap& em);

}  // namespace convseq
