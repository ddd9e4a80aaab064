#include <doctest.h>

#include <cmath>

#include "convseq/descriptor_cache.hpp"
#include "convseq/pipeline.hpp"
#include "support.hpp"

using namespace convseq;
using namespace convseq::testing;

namespace {

PipelineConfig synthetic_config() {
  PipelineConfig cfg;
  cfg.image_width = cfg.image_height = 128;
  cfg.cell_width = cfg.cell_height = 16;
  return cfg;
}

SyntheticPair small_pair(std::uint64_t seed, SyntheticVariation var = {}) {
  SyntheticOptions o;
  o.seed = seed;
  o.frames = 30;
  o.width = o.height = 128;
  o.step_px = 16;
  o.tile_px = 32;
  o.variation = var;
  return generate_synthetic_traverse(o);
}

std::vector<Raster> rasters_of(const std::vector<GrayImage>& images) {
  std::vector<Raster> out;
  for (const auto& img : images) {
    out.push_back({img.width(), img.height(), 1, {img.data().begin(), img.data().end()}});
  }
  return out;
}

}  // namespace

TEST_CASE("encoding paths agree") {
  const PipelineConfig cfg = synthetic_config();
  const SyntheticPair pair = small_pair(3);
  const auto rasters = rasters_of(pair.reference);
  const auto a = encode_images(pair.reference, cfg, 1);
  const auto b = encode_rasters(rasters, cfg, 3);
  CHECK(a == b);
  const auto refs = describe_references(rasters, cfg, 2);
  CHECK(refs == reference_descriptors(a));
}

TEST_CASE("identity traverse is matched perfectly") {
  const PipelineConfig cfg = synthetic_config();
  const SyntheticPair pair = small_pair(4);
  auto frames = encode_images(pair.reference, cfg, 2);
  const auto refs = reference_descriptors(frames);
  const MatchingSession session(std::move(frames), refs, 2);
  const BenchmarkRun run = session.run(cfg, pair.ground_truth);
  CHECK(run.report.accuracy == 1.0);
  CHECK(run.report.auc_pr == 1.0);
  CHECK(run.report.p_r100 == 1.0);
  CHECK(run.report.matched == run.decisions.size());
  CHECK(run.records.size() == run.matches.size());
  for (const auto& m : run.matches) CHECK(m.best_ref_start == m.query_start);
}

TEST_CASE("k = 1 reproduces the single-frame matcher exactly") {
  const PipelineConfig cfg = synthetic_config();
  const SyntheticPair pair = small_pair(5, {16.0, 1.5, 4.0});
  auto queries = encode_images(pair.query, cfg, 2);
  const auto refs = reference_descriptors(encode_images(pair.reference, cfg, 2));
  const std::vector<EncodedFrame> q_copy = queries;
  const MatchingSession session(std::move(queries), refs, 2);

  PipelineConfig one = cfg;
  one.min_k = one.max_k_info_gain = one.max_k = 1;
  const BenchmarkRun run = session.run(one, pair.ground_truth);
  REQUIRE(run.matches.size() == q_copy.size());
  for (std::size_t i = 0; i < q_copy.size(); ++i) {
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const double s = match_images(q_copy[i].query, refs[r]);
      CHECK(run.matches[i].window_scores[r] == s);
      if (s > best_score) {
        best_score = s;
        best = r;
      }
    }
    CHECK(run.matches[i].best_ref_start == best);
    CHECK(run.matches[i].best_score == best_score);
  }
  const BenchmarkRun fixed = session.run_fixed(1, cfg, pair.ground_truth);
  CHECK(fixed.report.accuracy == run.report.accuracy);
}

TEST_CASE("timing fields") {
  BenchmarkReport r;
  r.p_r100 = 0.8;
  r.mean_sequence_length = 4.0;
  apply_timing(r, 0.01, 0.77);
  CHECK(r.t_e == doctest::Approx(0.04));
  CHECK(r.pcu == pcu(0.8, 0.04, 0.77));
  apply_timing(r, 0.77 / 4.0, 0.77);
  CHECK(r.pcu == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("cache-precision references change scores only slightly") {
  const PipelineConfig cfg = synthetic_config();
  const SyntheticPair pair = small_pair(6, {8.0, 1.2, 2.0});
  auto queries = encode_images(pair.query, cfg, 2);
  const auto refs = reference_descriptors(encode_images(pair.reference, cfg, 2));
  std::vector<ImageDescriptor> rounded;
  for (const auto& r : refs) rounded.push_back(round_to_cache_precision(r));
  for (std::size_t i = 0; i < queries.size(); i += 7) {
    for (std::size_t j = 0; j < refs.size(); j += 5) {
      CHECK(std::abs(match_images(queries[i].query, refs[j]) -
                     match_images(queries[i].query, rounded[j])) <= 1e-6);
    }
  }
}
