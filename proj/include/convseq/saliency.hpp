#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convseq/config.hpp"
#include "convseq/descriptor.hpp"
#include "convseq/imaging.hpp"

namespace convseq {

// Strictly increasing region ids, 1 <= size <= N.
struct RoiSelection {
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  bool operator==(const RoiSelection&) const = default;
};

// The salient rows of an ImageDescriptor: row i is region roi.indices[i].
class QueryDescriptor {
 public:
  QueryDescriptor() = default;
  QueryDescriptor(RoiSelection roi, std::size_t depth, std::vector<double> values,
                  double image_entropy);

  const RoiSelection& roi() const noexcept { return roi_; }
  std::size_t rows() const noexcept { return roi_.size(); }
  std::size_t depth() const noexcept { return depth_; }
  double image_entropy() const noexcept { return image_entropy_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * depth_, depth_};
  }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const QueryDescriptor&) const = default;

 private:
  RoiSelection roi_;
  std::size_t depth_ = 0;
  std::vector<double> values_;
  double image_entropy_ = 0.0;
};

// Regions whose mean entropy / 8 is >= ET. Falls back to every region when
// none qualifies.
RoiSelection extract_roi(const EntropyMap& em, const PipelineConfig& cfg);

// Throws Error{Internal} on an out-of-range or unordered selection.
QueryDescriptor select_regions(const ImageDescriptor& desc, const RoiSelection& roi,
                               double image_entropy);

// Everything the sequencer and matcher need from one frame. A frame plays the
// query role through `query` and the reference role through `descriptor`.
struct EncodedFrame {
  ImageDescriptor descriptor;
  QueryDescriptor query;
  double entropy = 0.0;

  bool operator==(const EncodedFrame&) const = default;
};

EncodedFrame encode_frame(const GrayImage& standardized, const PipelineConfig& cfg);
EncodedFrame encode_raster(const Raster& raster, const PipelineConfig& cfg);

// Assembles a frame from an already-computed descriptor; the query role uses
// `roi`. Handy for constructing test traverses.
EncodedFrame make_frame(ImageDescriptor descriptor, const RoiSelection& roi, double entropy);

}  // namespace convseq
