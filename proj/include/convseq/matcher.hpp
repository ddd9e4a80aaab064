#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convseq/descriptor.hpp"
#include "convseq/saliency.hpp"

namespace convseq {

// G x N cosine similarities between query ROI rows and reference regions.
struct ScoreMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> scores;

  double operator()(std::size_t i, std::size_t j) const { return scores[i * cols + j]; }
};

// Full matrix product q * r^T. Throws Error{Config} on a depth mismatch.
ScoreMatrix score_matrix(const QueryDescriptor& q, const ImageDescriptor& r);

// A reference descriptor laid out for the max-pooling kernel: all-zero rows
// dropped and the remainder stored depth-major, so one query component
// updates a contiguous run of accumulators. Build once per reference frame and
// reuse across queries.
class PreparedReference {
 public:
  PreparedReference() = default;
  explicit PreparedReference(const ImageDescriptor& r);

  std::size_t depth() const noexcept { return depth_; }
  std::size_t regions() const noexcept { return regions_; }
  std::size_t active() const noexcept { return active_; }
  std::span<const double> component(std::size_t d) const {
    return {transposed_.data() + d * active_, active_};
  }
  // Original region id of active column k.
  std::size_t region_of(std::size_t k) const { return kept_[k]; }

 private:
  std::size_t depth_ = 0;
  std::size_t regions_ = 0;
  std::size_t active_ = 0;
  std::vector<std::size_t> kept_;
  std::vector<double> transposed_;
};

// Mean over query rows of the row-wise maximum cosine. In [0, 1].
double match_images(const QueryDescriptor& q, const ImageDescriptor& r);
double match_images(const QueryDescriptor& q, const PreparedReference& r);

// Row maxima of the score matrix, used by match_images and by tests.
std::vector<double> row_maxima(const QueryDescriptor& q, const PreparedReference& r);

}  // namespace convseq
