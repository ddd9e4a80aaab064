#include "convseq/pipeline.hpp"

#include "convseq/parallel.hpp"

namespace convseq {

std::vector<EncodedFrame> encode_images(std::span<const GrayImage> images,
                                        const PipelineConfig& cfg, std::size_t threads) {
  std::vector<EncodedFrame> out(images.size());
  parallel_for(images.size(), threads, [&](std::size_t i) {
    out[i] = encode_frame(resize_bilinear(images[i], cfg.image_width, cfg.image_height), cfg);
  });
  return out;
}

std::vector<EncodedFrame> encode_rasters(std::span<const Raster> rasters,
                                         const PipelineConfig& cfg, std::size_t threads) {
  std::vector<EncodedFrame> out(rasters.size());
  parallel_for(rasters.size(), threads,
               [&](std::size_t i) { out[i] = encode_raster(rasters[i], cfg); });
  return out;
}

std::vector<ImageDescriptor> reference_descriptors(std::span<const EncodedFrame> frames) {
  std::vector<ImageDescriptor> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(f.descriptor);
  return out;
}

std::vector<ImageDescriptor> describe_references(std::span<const Raster> rasters,
                                                 const PipelineConfig& cfg, std::size_t threads) {
  std::vector<ImageDescriptor> out(rasters.size());
  parallel_for(rasters.size(), threads, [&](std::size_t i) {
    const GrayImage img = standardize(rasters[i], cfg);
    out[i] = block_normalize(compute_cell_histograms(compute_gradients(img), cfg));
  });
  return out;
}

MatchingSession::MatchingSession(std::vector<EncodedFrame> queries,
                                 std::vector<ImageDescriptor> references, std::size_t threads)
    : queries_(std::move(queries)), references_(std::move(references)), threads_(threads) {
  const auto prepared = prepare_references(references_, threads_);
  table_ = PairScoreTable(queries_, prepared, threads_);
}

BenchmarkRun MatchingSession::run(const PipelineConfig& cfg, const GroundTruth& gt) const {
  BenchmarkRun out;
  out.decisions = decide_all(queries_, cfg, threads_);

  double length_sum = 0.0;
  for (const auto& d : out.decisions) {
    auto res = match_sequence(table_, d.start, d.final_length);
    if (!res) continue;
    out.records.push_back({res->query_start, res->best_ref_start, res->best_score, res->length});
    length_sum += static_cast<double>(res->length);
    out.matches.push_back(std::move(*res));
  }

  BenchmarkReport& rep = out.report;
  rep.query_frames = queries_.size();
  rep.reference_frames = references_.size();
  rep.matched = out.records.size();
  rep.tolerance = gt.tolerance;
  out.judged = judge(out.records, gt);
  rep.accuracy = accuracy(out.judged);
  rep.pr_points = pr_curve(out.records, out.judged);
  rep.auc_pr = auc_pr(rep.pr_points);
  rep.p_r100 = precision_at_full_recall(rep.pr_points);
  rep.mean_sequence_length = length_sum / static_cast<double>(rep.matched);
  return out;
}

BenchmarkRun MatchingSession::run_fixed(std::size_t k, const PipelineConfig& cfg,
                                        const GroundTruth& gt) const {
  return run(cfg.with_fixed_length(k), gt);
}

void apply_timing(BenchmarkReport& report, double t_e_per_frame, double t_e_max) {
  report.t_e_per_frame = t_e_per_frame;
  report.t_e = t_e_per_frame * report.mean_sequence_length;
  report.t_e_max = t_e_max;
  report.pcu = pcu(report.p_r100, report.t_e, t_e_max);
}

}  // namespace convseq
