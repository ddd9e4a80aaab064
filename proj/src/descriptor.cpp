#include "convseq/descriptor.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "convseq/error.hpp"

namespace convseq {

ImageDescriptor::ImageDescriptor(std::size_t regions, std::size_t depth, std::vector<double> values)
    : regions_(regions), depth_(depth), values_(std::move(values)) {
  if (values_.size() != regions_ * depth_) {
    throw internal_error(fmt::format("descriptor holds {} values, expected {}x{}",
                                     values_.size(), regions_, depth_));
  }
}

CellHistogramGrid compute_cell_histograms(const GradientMap& gm, const PipelineConfig& cfg) {
  const std::size_t w = gm.magnitude.width();
  const std::size_t h = gm.magnitude.height();
  if (w != cfg.image_width || h != cfg.image_height) {
    throw config_error(fmt::format("gradient map is {}x{}, pipeline expects {}x{}", w, h,
                                   cfg.image_width, cfg.image_height));
  }
  if (cfg.cell_width == 0 || cfg.cell_height == 0 || w % cfg.cell_width != 0 ||
      h % cfg.cell_height != 0) {
    throw config_error(fmt::format("image {}x{} does not tile into {}x{} cells", w, h,
                                   cfg.cell_width, cfg.cell_height));
  }
  if (cfg.bins < 1) throw config_error("bins must be positive");

  const std::size_t rows = h / cfg.cell_height;
  const std::size_t cols = w / cfg.cell_width;
  CellHistogramGrid grid(rows, cols, cfg.bins);
  const double bin_width = 180.0 / static_cast<double>(cfg.bins);

  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t r = y / cfg.cell_height;
    for (std::size_t x = 0; x < w; ++x) {
      const double mag = gm.magnitude(x, y);
      if (mag == 0.0) continue;
      auto bin = static_cast<std::size_t>(gm.orientation(x, y) / bin_width);
      bin = std::min(bin, cfg.bins - 1);
      grid.cell(r, x / cfg.cell_width)[bin] += mag;
    }
  }
  return grid;
}

ImageDescriptor block_normalize(const CellHistogramGrid& grid) {
  const std::size_t rows = grid.rows();
  const std::size_t cols = grid.cols();
  if (rows < 2 || cols < 2) {
    throw config_error(fmt::format("cell grid {}x{} is smaller than one 2x2 block", rows, cols));
  }
  const std::size_t bins = grid.bins();
  ImageDescriptor desc(rows * cols, 4 * bins);

  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t ar = std::min(r, rows - 2);
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t ac = std::min(c, cols - 2);
      auto out = desc.row(r * cols + c);
      auto it = out.begin();
      for (auto cell : {grid.cell(ar, ac), grid.cell(ar, ac + 1), grid.cell(ar + 1, ac),
                        grid.cell(ar + 1, ac + 1)}) {
        it = std::copy(cell.begin(), cell.end(), it);
      }
      double sq = 0.0;
      for (double v : out) sq += v * v;
      if (sq == 0.0) continue;
      const double norm = std::sqrt(sq);
      for (double& v : out) v /= norm;
    }
  }
  return desc;
}

ImageBundle describe_image(const GrayImage& img, const PipelineConfig& cfg) {
  if (img.width() != cfg.image_width || img.height() != cfg.image_height) {
    throw config_error(fmt::format("image is {}x{}, pipeline expects {}x{}", img.width(),
                                   img.height(), cfg.image_width, cfg.image_height));
  }
  ImageBundle bundle;
  bundle.descriptor = block_normalize(compute_cell_histograms(compute_gradients(img), cfg));
  bundle.entropy = compute_entropy_map(img, cfg);
  bundle.image_entropy = image_entropy_scalar(bundle.entropy);
  return bundle;
}

}  // namespace convseq
