#include "convseq/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "convseq/error.hpp"
#include "convseq/saliency.hpp"

namespace convseq {

std::vector<bool> judge(std::span<const MatchRecord> records, const GroundTruth& gt) {
  std::vector<bool> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (!gt.truth(rec.query_start)) {
      throw evaluation_error(fmt::format("no ground truth for query index {}", rec.query_start));
    }
    out.push_back(gt.is_correct(rec.query_start, rec.predicted_ref));
  }
  return out;
}

double accuracy(const std::vector<bool>& judged) {
  if (judged.empty()) throw evaluation_error("accuracy of an empty match set");
  const auto correct = std::count(judged.begin(), judged.end(), true);
  return static_cast<double>(correct) / static_cast<double>(judged.size());
}

std::vector<PrPoint> pr_curve(std::span<const MatchRecord> records, const std::vector<bool>& judged) {
  if (records.empty()) throw evaluation_error("PR curve of an empty match set");
  if (records.size() != judged.size()) {
    throw evaluation_error("records and judgments differ in length");
  }
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].score > records[b].score;
  });
  const auto positives = static_cast<std::size_t>(std::count(judged.begin(), judged.end(), true));

  std::vector<PrPoint> points;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = records[order[i]].score;
    for (; i < order.size() && records[order[i]].score == threshold; ++i) {
      if (judged[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
    }
    PrPoint p;
    p.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    p.recall = positives == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(positives);
    points.push_back(p);
  }
  return points;
}

double auc_pr(std::span<const PrPoint> points) {
  if (points.empty()) throw evaluation_error("AUC of an empty PR curve");
  // Summation by parts of sum_i (r_i - r_{i-1}) * m_i, m_i the trapezoid
  // mid-height: equal heights cancel exactly, so a curve at precision 1
  // integrates to exactly its final recall.
  const std::size_t n = points.size();
  auto mid = [&](std::size_t i) {
    const double prev = i == 0 ? points[0].precision : points[i - 1].precision;
    return 0.5 * (points[i].precision + prev);
  };
  double area = points[n - 1].recall * mid(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) area += points[i].recall * (mid(i) - mid(i + 1));
  return std::clamp(area, 0.0, 1.0);
}

double precision_at_full_recall(std::span<const PrPoint> points) {
  if (points.empty()) throw evaluation_error("precision at 100% recall of an empty PR curve");
  return points.back().precision;
}

double pcu(double p_r100, double t_e, double t_e_max) {
  if (!(t_e > 0.0) || !(t_e_max > 0.0)) {
    throw evaluation_error(fmt::format("PCU needs positive encoding times (t_e={}, t_e_max={})",
                                       t_e, t_e_max));
  }
  return p_r100 * std::log10(t_e_max / t_e + 9.0);
}

TimedEncoding encode_timed(std::span<const Raster> frames, const PipelineConfig& cfg) {
  if (frames.empty()) throw evaluation_error("no frames to time");
  using clock = std::chrono::steady_clock;
  TimedEncoding out;
  out.frames.reserve(frames.size());
  out.frames.push_back(encode_raster(frames[0], cfg));

  double seconds = 0.0;
  std::size_t timed = 0;
  auto timed_encode = [&](const Raster& r) {
    const auto t0 = clock::now();
    EncodedFrame f = encode_raster(r, cfg);
    seconds += std::chrono::duration<double>(clock::now() - t0).count();
    ++timed;
    return f;
  };
  if (frames.size() == 1) {
    timed_encode(frames[0]);
  }
  for (std::size_t i = 1; i < frames.size(); ++i) out.frames.push_back(timed_encode(frames[i]));
  out.seconds_per_frame = std::max(seconds / static_cast<double>(timed), 1e-9);
  return out;
}

double time_encoding(std::span<const Raster> frames, const PipelineConfig& cfg) {
  return encode_timed(frames, cfg).seconds_per_frame;
}

}  // namespace convseq
