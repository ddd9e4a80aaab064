#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convseq/config.hpp"
#include "convseq/datasetio.hpp"
#include "convseq/imaging.hpp"
#include "convseq/saliency.hpp"

namespace convseq {

// Per-frame encoding time of NetVLAD in seconds; the default PCU normalizer.
inline constexpr double kDefaultMaxEncodingTime = 0.77;

struct MatchRecord {
  std::size_t query_start = 0;
  std::size_t predicted_ref = 0;
  double score = 0.0;
  std::size_t length = 1;  // sequence length used for this match
};

// Throws Error{Evaluation} when a record's query index has no ground truth.
std::vector<bool> judge(std::span<const MatchRecord> records, const GroundTruth& gt);

// Throws Error{Evaluation} on an empty set.
double accuracy(const std::vector<bool>& judged);

struct PrPoint {
  double precision = 1.0;
  double recall = 0.0;

  bool operator==(const PrPoint&) const = default;
};

// One point per distinct score, thresholds descending; a record is accepted
// when its score is >= the threshold. Recall counts only correct records as
// positives.
std::vector<PrPoint> pr_curve(std::span<const MatchRecord> records, const std::vector<bool>& judged);

// Trapezoidal area under precision(recall), starting from
// (first precision, recall 0).
double auc_pr(std::span<const PrPoint> points);

// Precision with every record accepted (the last point of the curve).
double precision_at_full_recall(std::span<const PrPoint> points);

// p_r100 * log10(t_e_max / t_e + 9). Throws Error{Evaluation} unless both
// times are positive.
double pcu(double p_r100, double t_e, double t_e_max = kDefaultMaxEncodingTime);

// Mean wall-clock seconds per frame for standardize + gradients + entropy map
// + HOG + block normalization + ROI extraction, run serially. The first frame
// only warms up; with a single frame it is encoded twice.
double time_encoding(std::span<const Raster> frames, const PipelineConfig& cfg);

struct TimedEncoding {
  std::vector<EncodedFrame> frames;
  double seconds_per_frame = 0.0;
};

// time_encoding that keeps the encoded frames.
TimedEncoding encode_timed(std::span<const Raster> frames, const PipelineConfig& cfg);

}  // namespace convseq
