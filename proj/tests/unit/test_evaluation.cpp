#include <doctest.h>

#include <cmath>
#include <random>

#include "convseq/error.hpp"
#include "convseq/evaluation.hpp"
#include "support.hpp"

using namespace convseq;
using namespace convseq::testing;

namespace {

template <typename Fn>
ErrorCategory category_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  return ErrorCategory::Internal;
}

// Brute-force sweep: every distinct score as a threshold, counting from scratch.
std::vector<PrPoint> pr_oracle(const std::vector<MatchRecord>& recs, const std::vector<bool>& ok) {
  std::vector<double> thresholds;
  for (const auto& r : recs) thresholds.push_back(r.score);
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  const double positives = static_cast<double>(std::count(ok.begin(), ok.end(), true));
  std::vector<PrPoint> out;
  for (double t : thresholds) {
    double tp = 0, accepted = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (recs[i].score >= t) {
        ++accepted;
        if (ok[i]) ++tp;
      }
    }
    out.push_back({tp / accepted, positives == 0 ? 0.0 : tp / positives});
  }
  return out;
}

// Simpson's rule on every linear piece of the interpolated curve.
double area_oracle(const std::vector<PrPoint>& pts) {
  std::vector<PrPoint> path{{pts.front().precision, 0.0}};
  path.insert(path.end(), pts.begin(), pts.end());
  double area = 0.0;
  for (std::size_t s = 1; s < path.size(); ++s) {
    const double r0 = path[s - 1].recall, r1 = path[s].recall;
    const double p0 = path[s - 1].precision, p1 = path[s].precision;
    const int n = 1000;
    const double h = (r1 - r0) / n;
    auto f = [&](double r) { return r1 == r0 ? p0 : p0 + (p1 - p0) * (r - r0) / (r1 - r0); };
    double acc = f(r0) + f(r1);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(r0 + i * h);
    area += acc * h / 3.0;
  }
  return area;
}

}  // namespace

TEST_CASE("judging within the tolerance") {
  GroundTruth gt = identity_ground_truth(20, 2);
  gt.mapping[5] = 5;
  const std::vector<MatchRecord> recs = {{5, 5}, {5, 7}, {5, 8}, {5, 3}, {5, 2}};
  CHECK(judge(recs, gt) == std::vector<bool>{true, true, false, true, false});
  gt.tolerance = 1;
  CHECK(judge(recs, gt) == std::vector<bool>{true, false, false, false, false});

  GroundTruth sparse;
  sparse.mapping[10] = 10;
  CHECK(judge(std::vector<MatchRecord>{{10, 12}}, sparse) == std::vector<bool>{true});
  CHECK(judge(std::vector<MatchRecord>{{10, 13}}, sparse) == std::vector<bool>{false});
  CHECK(category_of([&] { judge(std::vector<MatchRecord>{{3, 3}}, sparse); }) ==
        ErrorCategory::Evaluation);
}

TEST_CASE("accuracy") {
  CHECK(accuracy({true, true}) == 1.0);
  CHECK(accuracy({false, false, false}) == 0.0);
  std::vector<bool> seven(10, false);
  std::fill(seven.begin(), seven.begin() + 7, true);
  CHECK(accuracy(seven) == 0.7);
  CHECK(category_of([] { accuracy({}); }) == ErrorCategory::Evaluation);
}

TEST_CASE("four-record PR curve and its area") {
  const std::vector<MatchRecord> recs = {{0, 0, 0.9}, {1, 1, 0.8}, {2, 2, 0.7}, {3, 3, 0.6}};
  const std::vector<bool> ok = {true, true, false, true};
  const auto pts = pr_curve(recs, ok);
  REQUIRE(pts.size() == 4);
  const double expect[4][2] = {{1, 1.0 / 3}, {1, 2.0 / 3}, {2.0 / 3, 2.0 / 3}, {0.75, 1}};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(pts[i].precision - expect[i][0]) <= 1e-9);
    CHECK(std::abs(pts[i].recall - expect[i][1]) <= 1e-9);
  }
  CHECK(std::abs(auc_pr(pts) - 65.0 / 72.0) <= 1e-9);
  CHECK(std::abs(auc_pr(pts) - area_oracle(pts)) <= 1e-9);
  CHECK(precision_at_full_recall(pts) == 0.75);
}

TEST_CASE("the top-scored record being wrong starts the curve at precision 0") {
  const std::vector<MatchRecord> recs = {{0, 9, 0.95}, {1, 1, 0.5}, {2, 2, 0.4}};
  const auto pts = pr_curve(recs, {false, true, true});
  CHECK(pts.front().precision == 0.0);
  CHECK(pts.front().recall == 0.0);
}

TEST_CASE("all-correct curves have area exactly one") {
  CHECK(auc_pr(std::vector<PrPoint>{{1.0, 1.0}}) == 1.0);
  std::vector<MatchRecord> recs;
  for (std::size_t i = 0; i < 37; ++i) recs.push_back({i, i, 1.0 - 0.01 * static_cast<double>(i % 11)});
  const auto pts = pr_curve(recs, std::vector<bool>(37, true));
  for (const auto& p : pts) CHECK(p.precision == 1.0);
  CHECK(auc_pr(pts) == 1.0);
}

TEST_CASE("PR sweep equals the brute-force sweep on random record sets") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform_index(rng, 1, 40);
    std::vector<MatchRecord> recs;
    std::vector<bool> ok;
    for (std::size_t i = 0; i < n; ++i) {
      // Few distinct scores so ties are common.
      recs.push_back({i, i, static_cast<double>(uniform_index(rng, 0, 8)) / 8.0});
      ok.push_back(uniform_real(rng) < 0.6);
    }
    const auto pts = pr_curve(recs, ok);
    const auto oracle = pr_oracle(recs, ok);
    REQUIRE(pts.size() == oracle.size());
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(std::abs(pts[i].precision - oracle[i].precision) <= 1e-12);
      CHECK(std::abs(pts[i].recall - oracle[i].recall) <= 1e-12);
      CHECK(pts[i].precision >= 0.0);
      CHECK(pts[i].precision <= 1.0);
      CHECK(pts[i].recall >= prev_recall);
      CHECK(pts[i].recall <= 1.0);
      prev_recall = pts[i].recall;
    }
    const double auc = auc_pr(pts);
    CHECK(auc >= 0.0);
    CHECK(auc <= 1.0);
    CHECK(std::abs(auc - area_oracle(pts)) <= 1e-9);
    if (std::all_of(ok.begin(), ok.end(), [](bool b) { return b; })) CHECK(auc == 1.0);
    if (pts.front().precision < 1.0) CHECK(auc < 1.0);
  }
}

TEST_CASE("empty inputs are evaluation errors") {
  CHECK(category_of([] { pr_curve({}, {}); }) == ErrorCategory::Evaluation);
  CHECK(category_of([] { auc_pr({}); }) == ErrorCategory::Evaluation);
  CHECK(category_of([] { precision_at_full_recall({}); }) == ErrorCategory::Evaluation);
}

TEST_CASE("PCU") {
  CHECK(kDefaultMaxEncodingTime == 0.77);
  for (double p : {0.0, 0.25, 0.5, 0.875, 1.0}) CHECK(pcu(p, 0.77, 0.77) == p);
  CHECK(pcu(0.8, 0.3) == pcu(0.8, 0.3, 0.77));
  CHECK(std::abs(pcu(0.5, 0.77 / 91.0) - 1.0) <= 1e-12);
  double previous = pcu(0.9, 1e-4);
  for (double t = 2e-4; t < 5.0; t *= 1.7) {
    const double v = pcu(0.9, t);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(category_of([] { pcu(0.5, 0.0); }) == ErrorCategory::Evaluation);
  CHECK(category_of([] { pcu(0.5, 0.1, -1.0); }) == ErrorCategory::Evaluation);
}

TEST_CASE("encoding time is positive, finite and stable") {
  std::mt19937_64 rng(72);
  PipelineConfig cfg = small_config();
  cfg.image_width = cfg.image_height = 128;
  std::vector<Raster> frames;
  for (int i = 0; i < 12; ++i) {
    const GrayImage img = random_image(rng, 160, 120);
    frames.push_back({160, 120, 1, {img.data().begin(), img.data().end()}});
  }
  auto best_of_three = [&] {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) best = std::min(best, time_encoding(frames, cfg));
    return best;
  };
  const double a = best_of_three();
  const double b = best_of_three();
  CHECK(a > 0.0);
  CHECK(std::isfinite(a));
  CHECK(std::abs(a - b) <= 0.5 * std::max(a, b));

  const TimedEncoding timed = encode_timed(frames, cfg);
  REQUIRE(timed.frames.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) CHECK(timed.frames[i] == encode_raster(frames[i], cfg));
  CHECK(time_encoding(std::span(frames).first(1), cfg) > 0.0);
  CHECK(category_of([&] { time_encoding({}, cfg); }) == ErrorCategory::Evaluation);
}
