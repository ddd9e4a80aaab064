#include "convseq/saliency.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "convseq/error.hpp"

namespace convseq {

QueryDescriptor::QueryDescriptor(RoiSelection roi, std::size_t depth, std::vector<double> values,
                                 double image_entropy)
    : roi_(std::move(roi)), depth_(depth), values_(std::move(values)),
      image_entropy_(image_entropy) {
  if (values_.size() != roi_.size() * depth_) {
    throw internal_error(fmt::format("query descriptor holds {} values, expected {}x{}",
                                     values_.size(), roi_.size(), depth_));
  }
}

RoiSelection extract_roi(const EntropyMap& em, const PipelineConfig& cfg) {
  const std::size_t w = em.values.width();
  const std::size_t h = em.values.height();
  if (w != cfg.image_width || h != cfg.image_height) {
    throw config_error(fmt::format("entropy map is {}x{}, pipeline expects {}x{}", w, h,
                                   cfg.image_width, cfg.image_height));
  }
  const std::size_t rows = cfg.grid_rows();
  const std::size_t cols = cfg.grid_cols();
  std::vector<double> sums(rows * cols, 0.0);
  for (std::size_t y = 0; y < h; ++y) {
    const auto line = em.values.row(y);
    const std::size_t base = (y / cfg.cell_height) * cols;
    for (std::size_t x = 0; x < w; ++x) sums[base + x / cfg.cell_width] += line[x];
  }

  const double per_region = static_cast<double>(cfg.cell_width * cfg.cell_height) * 8.0;
  RoiSelection roi;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] / per_region >= cfg.entropy_threshold) roi.indices.push_back(i);
  }
  if (roi.indices.empty()) {
    roi.indices.resize(sums.size());
    std::iota(roi.indices.begin(), roi.indices.end(), std::size_t{0});
  }
  return roi;
}

QueryDescriptor select_regions(const ImageDescriptor& desc, const RoiSelection& roi,
                               double image_entropy) {
  const std::size_t depth = desc.depth();
  std::vector<double> values;
  values.reserve(roi.size() * depth);
  for (std::size_t k = 0; k < roi.size(); ++k) {
    const std::size_t idx = roi.indices[k];
    if (idx >= desc.regions()) {
      throw internal_error(fmt::format("ROI index {} out of range for {} regions", idx,
                                       desc.regions()));
    }
    if (k > 0 && idx <= roi.indices[k - 1]) {
      throw internal_error("ROI indices must be strictly increasing");
    }
    const auto row = desc.row(idx);
    values.insert(values.end(), row.begin(), row.end());
  }
  return {roi, depth, std::move(values), image_entropy};
}

EncodedFrame make_frame(ImageDescriptor descriptor, const RoiSelection& roi, double entropy) {
  EncodedFrame frame;
  frame.query = select_regions(descriptor, roi, entropy);
  frame.descriptor = std::move(descriptor);
  frame.entropy = entropy;
  return frame;
}

EncodedFrame encode_frame(const GrayImage& standardized, const PipelineConfig& cfg) {
  ImageBundle bundle = describe_image(standardized, cfg);
  const RoiSelection roi = extract_roi(bundle.entropy, cfg);
  return make_frame(std::move(bundle.descriptor), roi, bundle.image_entropy);
}

EncodedFrame encode_raster(const Raster& raster, const PipelineConfig& cfg) {
  return encode_frame(standardize(raster, cfg), cfg);
}

}  // namespace convseq
