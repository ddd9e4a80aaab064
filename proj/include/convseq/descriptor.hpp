#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convseq/config.hpp"
#include "convseq/imaging.hpp"

namespace convseq {

// Magnitude-weighted orientation histograms of the non-overlapping cells.
class CellHistogramGrid {
 public:
  CellHistogramGrid() = default;
  CellHistogramGrid(std::size_t rows, std::size_t cols, std::size_t bins)
      : rows_(rows), cols_(cols), bins_(bins), hist_(rows * cols * bins, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t bins() const noexcept { return bins_; }

  std::span<double> cell(std::size_t r, std::size_t c) {
    return {hist_.data() + (r * cols_ + c) * bins_, bins_};
  }
  std::span<const double> cell(std::size_t r, std::size_t c) const {
    return {hist_.data() + (r * cols_ + c) * bins_, bins_};
  }
  std::span<double> values() noexcept { return hist_; }
  std::span<const double> values() const noexcept { return hist_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t bins_ = 0;
  std::vector<double> hist_;
};

// One block-normalized 4L vector per region, regions in row-major order.
// Every row has unit L2 norm or is all zero; all components are >= 0.
class ImageDescriptor {
 public:
  ImageDescriptor() = default;
  ImageDescriptor(std::size_t regions, std::size_t depth)
      : regions_(regions), depth_(depth), values_(regions * depth, 0.0) {}
  ImageDescriptor(std::size_t regions, std::size_t depth, std::vector<double> values);

  std::size_t regions() const noexcept { return regions_; }
  std::size_t depth() const noexcept { return depth_; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * depth_, depth_}; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * depth_, depth_};
  }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const ImageDescriptor&) const = default;

 private:
  std::size_t regions_ = 0;
  std::size_t depth_ = 0;
  std::vector<double> values_;
};

// Each pixel votes its magnitude into bin floor(angle / (180 / L)).
CellHistogramGrid compute_cell_histograms(const GradientMap& gm, const PipelineConfig& cfg);

// Region (r, c) is described by the 2x2 cell block anchored at
// (min(r, rows-2), min(c, cols-2)), concatenated row-major and L2-normalized.
ImageDescriptor block_normalize(const CellHistogramGrid& grid);

struct ImageBundle {
  ImageDescriptor descriptor;
  EntropyMap entropy;
  double image_entropy = 0.0;

  bool operator==(const ImageBundle& other) const {
    return descriptor == other.descriptor && entropy.values == other.entropy.values &&
           image_entropy == other.image_entropy;
  }
};

ImageBundle describe_image(const GrayImage& img, const PipelineConfig& cfg);

}  // namespace convseq
