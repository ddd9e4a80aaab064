#include "convseq/matcher.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "convseq/error.hpp"

namespace convseq {

namespace {

void check_depth(std::size_t query_depth, std::size_t ref_depth) {
  if (query_depth != ref_depth) {
    throw config_error(fmt::format("descriptor depth mismatch: query {} vs reference {}",
                                   query_depth, ref_depth));
  }
}

// acc[k] = <q_row, active column k>. Returns false when q_row is all zero,
// leaving acc zeroed.
bool accumulate_row(std::span<const double> q_row, const PreparedReference& r,
                    std::vector<double>& acc) {
  const std::size_t n = r.active();
  acc.assign(n, 0.0);
  bool any = false;
  for (std::size_t d = 0; d < q_row.size(); ++d) {
    const double w = q_row[d];
    if (w == 0.0) continue;
    any = true;
    const double* col = r.component(d).data();
    double* a = acc.data();
    for (std::size_t j = 0; j < n; ++j) a[j] += w * col[j];
  }
  return any;
}

}  // namespace

ScoreMatrix score_matrix(const QueryDescriptor& q, const ImageDescriptor& r) {
  check_depth(q.depth(), r.depth());
  const PreparedReference prepared(r);
  ScoreMatrix m{q.rows(), r.regions(), std::vector<double>(q.rows() * r.regions(), 0.0)};
  std::vector<double> acc;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (!accumulate_row(q.row(i), prepared, acc)) continue;
    double* out = m.scores.data() + i * m.cols;
    for (std::size_t k = 0; k < acc.size(); ++k) {
      out[prepared.region_of(k)] = std::clamp(acc[k], 0.0, 1.0);
    }
  }
  return m;
}

PreparedReference::PreparedReference(const ImageDescriptor& r)
    : depth_(r.depth()), regions_(r.regions()) {
  std::vector<std::size_t> keep;
  keep.reserve(regions_);
  for (std::size_t j = 0; j < regions_; ++j) {
    const auto row = r.row(j);
    if (std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; })) keep.push_back(j);
  }
  active_ = keep.size();
  kept_ = std::move(keep);
  transposed_.resize(depth_ * active_);
  for (std::size_t k = 0; k < active_; ++k) {
    const auto row = r.row(kept_[k]);
    for (std::size_t d = 0; d < depth_; ++d) transposed_[d * active_ + k] = row[d];
  }
}

std::vector<double> row_maxima(const QueryDescriptor& q, const PreparedReference& r) {
  check_depth(q.depth(), r.depth());
  std::vector<double> maxima(q.rows(), 0.0);
  const std::size_t n = r.active();
  if (n == 0) return maxima;

  std::vector<double> acc;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (!accumulate_row(q.row(i), r, acc)) continue;
    maxima[i] = std::clamp(*std::max_element(acc.begin(), acc.end()), 0.0, 1.0);
  }
  return maxima;
}

double match_images(const QueryDescriptor& q, const PreparedReference& r) {
  const auto maxima = row_maxima(q, r);
  if (maxima.empty()) return 0.0;
  double sum = 0.0;
  for (double m : maxima) sum += m;
  return sum / static_cast<double>(maxima.size());
}

double match_images(const QueryDescriptor& q, const ImageDescriptor& r) {
  return match_images(q, PreparedReference(r));
}

}  // namespace convseq
