#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convseq/config.hpp"
#include "convseq/datasetio.hpp"
#include "convseq/evaluation.hpp"
#include "convseq/seqmatch.hpp"
#include "convseq/sequencer.hpp"

namespace convseq {

std::vector<EncodedFrame> encode_images(std::span<const GrayImage> images,
                                        const PipelineConfig& cfg, std::size_t threads = 1);
std::vector<EncodedFrame> encode_rasters(std::span<const Raster> rasters,
                                         const PipelineConfig& cfg, std::size_t threads = 1);

std::vector<ImageDescriptor> reference_descriptors(std::span<const EncodedFrame> frames);

// Reference role only: the descriptor without entropy map or ROI.
std::vector<ImageDescriptor> describe_references(std::span<const Raster> rasters,
                                                 const PipelineConfig& cfg,
                                                 std::size_t threads = 1);

struct BenchmarkReport {
  double accuracy = 0.0;
  double auc_pr = 0.0;
  double p_r100 = 0.0;
  std::vector<PrPoint> pr_points;
  std::size_t query_frames = 0;
  std::size_t reference_frames = 0;
  std::size_t matched = 0;
  double mean_sequence_length = 0.0;
  std::size_t tolerance = 0;

  // Timing; excluded from determinism comparisons. t_e is the per-frame time
  // scaled by the mean sequence length.
  double t_e_per_frame = 0.0;
  double t_e = 0.0;
  double t_e_max = kDefaultMaxEncodingTime;
  double pcu = 0.0;
};

struct BenchmarkRun {
  std::vector<SequenceDecision> decisions;
  std::vector<SequenceMatchResult> matches;
  std::vector<MatchRecord> records;
  std::vector<bool> judged;
  BenchmarkReport report;
};

// Encoded query and reference traverses plus the pair-score table between
// them. Sequencing parameters (IT, min_k, max_k, ...) may vary between runs
// on one session; encoding parameters are fixed by the frames passed in.
class MatchingSession {
 public:
  MatchingSession(std::vector<EncodedFrame> queries, std::vector<ImageDescriptor> references,
                  std::size_t threads = 1);

  std::span<const EncodedFrame> queries() const noexcept { return queries_; }
  std::span<const ImageDescriptor> references() const noexcept { return references_; }
  const PairScoreTable& pair_scores() const noexcept { return table_; }

  // Dynamic sequence lengths per `cfg`; fills everything but timing.
  BenchmarkRun run(const PipelineConfig& cfg, const GroundTruth& gt) const;

  BenchmarkRun run_fixed(std::size_t k, const PipelineConfig& cfg, const GroundTruth& gt) const;

 private:
  std::vector<EncodedFrame> queries_;
  std::vector<ImageDescriptor> references_;
  std::size_t threads_;
  PairScoreTable table_;
};

// Adds t_e, t_e_max and PCU to a report given the per-frame encoding time.
void apply_timing(BenchmarkReport& report, double t_e_per_frame, double t_e_max);

}  // namespace convseq
