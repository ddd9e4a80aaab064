#include "convseq/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <fmt/format.h>

#include "convseq/descriptor_cache.hpp"
#include "convseq/error.hpp"

namespace convseq {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void warn(const std::string& msg) { fmt::print(stderr, "warning: {}\n", msg); }

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error(fmt::format("cannot create output directory {}: {}", dir.string(),
                                     ec.message()));
}

std::vector<Raster> load_rasters(const fs::path& dir, std::size_t threads) {
  const Traverse t = load_traverse(dir);
  if (t.skipped > 0) {
    warn(fmt::format("{}: skipped {} non-image file(s)", dir.string(), t.skipped));
  }
  return decode_traverse(t, threads);
}

std::vector<ImageDescriptor> load_references(const RunOptions& o) {
  const PipelineConfig& cfg = o.config;
  const auto rasters = load_rasters(o.dataset.reference, o.threads);
  if (!o.reference_cache) return describe_references(rasters, cfg, o.threads);

  std::error_code ec;
  if (fs::exists(*o.reference_cache, ec)) {
    auto cached = read_descriptor_cache(*o.reference_cache, cfg);
    if (cached.size() == rasters.size()) return cached;
    warn(fmt::format("{} holds {} descriptors for {} reference frames; re-encoding",
                     o.reference_cache->string(), cached.size(), rasters.size()));
  }
  auto fresh = describe_references(rasters, cfg, o.threads);
  for (auto& d : fresh) d = round_to_cache_precision(d);
  write_descriptor_cache(*o.reference_cache, cfg, fresh);
  return fresh;
}

struct LoadedSession {
  MatchingSession session;
  GroundTruth ground_truth;
  double seconds_per_frame;
};

LoadedSession load_session(const RunOptions& o) {
  o.config.validate();
  const auto query_rasters = load_rasters(o.dataset.query, o.threads);
  // Encoding time is measured serially, on the query traverse.
  TimedEncoding timed = encode_timed(query_rasters, o.config);
  auto refs = load_references(o);
  GroundTruth gt = load_ground_truth(o.dataset.ground_truth, timed.frames.size(), o.tolerance);
  return {MatchingSession(std::move(timed.frames), std::move(refs), o.threads), std::move(gt),
          timed.seconds_per_frame};
}

nlohmann::json path_or_null(const std::optional<fs::path>& p) {
  return p ? nlohmann::json(p->string()) : nlohmann::json(nullptr);
}

nlohmann::json absolute_or_null(const fs::path& p) {
  return p.empty() ? nlohmann::json(nullptr) : nlohmann::json(fs::absolute(p).string());
}

fs::path path_field(const nlohmann::json& j) {
  return j.is_null() ? fs::path() : fs::path(j.get<std::string>());
}

}  // namespace

DatasetPaths resolve_dataset(const fs::path& root) {
  DatasetPaths d{root / "query", root / "reference", std::nullopt};
  std::error_code ec;
  if (fs::is_regular_file(root / "ground_truth.csv", ec)) d.ground_truth = root / "ground_truth.csv";
  return d;
}

nlohmann::json make_manifest(const RunOptions& o, std::string_view command) {
  nlohmann::json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = command;
  m["timestamp"] = utc_timestamp();
  m["seed"] = o.seed ? nlohmann::json(*o.seed) : nlohmann::json(nullptr);
  m["config"] = o.config;
  m["dataset"] = {
      {"query", absolute_or_null(o.dataset.query)},
      {"reference", absolute_or_null(o.dataset.reference)},
      {"ground_truth", absolute_or_null(o.dataset.ground_truth.value_or(fs::path()))},
      {"tolerance", o.tolerance},
  };
  m["t_e_max"] = o.t_e_max;
  m["reference_cache"] = path_or_null(o.reference_cache);
  m["threads"] = o.threads;
  return m;
}

void apply_manifest(const nlohmann::json& m, RunOptions& o) {
  try {
    if (m.contains("config")) from_json(m.at("config"), o.config);
    if (m.contains("dataset")) {
      const auto& d = m.at("dataset");
      if (d.contains("query")) o.dataset.query = path_field(d.at("query"));
      if (d.contains("reference")) o.dataset.reference = path_field(d.at("reference"));
      if (d.contains("ground_truth")) {
        const fs::path gt = path_field(d.at("ground_truth"));
        o.dataset.ground_truth = gt.empty() ? std::nullopt : std::optional<fs::path>(gt);
      }
      if (d.contains("tolerance")) o.tolerance = d.at("tolerance").get<std::size_t>();
    }
    if (m.contains("t_e_max")) o.t_e_max = m.at("t_e_max").get<double>();
    if (m.contains("reference_cache")) {
      const auto& c = m.at("reference_cache");
      o.reference_cache =
          c.is_null() ? std::nullopt : std::optional<fs::path>(c.get<std::string>());
    }
    if (m.contains("seed")) {
      const auto& s = m.at("seed");
      o.seed = s.is_null() ? std::nullopt : std::optional<std::uint64_t>(s.get<std::uint64_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(fmt::format("malformed manifest: {}", e.what()));
  }
}

BenchmarkRun cmd_benchmark(const RunOptions& o) {
  ensure_out_dir(o.out_dir);
  LoadedSession loaded = load_session(o);
  BenchmarkRun run = loaded.session.run(o.config, loaded.ground_truth);
  apply_timing(run.report, loaded.seconds_per_frame, o.t_e_max);

  write_json(o.out_dir / "report.json", report_to_json(run.report));
  write_text(o.out_dir / "pr_curve.csv", pr_curve_csv(run.report.pr_points));
  write_text(o.out_dir / "matches.csv", matches_csv(run.records, run.judged, loaded.ground_truth));
  write_text(o.out_dir / "seq_lengths.csv", seq_lengths_csv(run.decisions));
  if (o.svg) {
    write_text(o.out_dir / "pr_curve.svg",
               pr_curve_svg(run.report.pr_points,
                            fmt::format("PR curve (AUC {:.4f})", run.report.auc_pr)));
  }
  write_json(o.out_dir / "manifest.json", make_manifest(o, "benchmark"));
  return run;
}

std::vector<AblationRow> cmd_ablate(const RunOptions& o, std::size_t k_min, std::size_t k_max) {
  if (k_min < 1 || k_min > k_max) {
    throw config_error(fmt::format("ablation range [{}, {}] must satisfy 1 <= k_min <= k_max",
                                   k_min, k_max));
  }
  ensure_out_dir(o.out_dir);
  LoadedSession loaded = load_session(o);
  const MatchingSession& session = loaded.session;

  std::vector<AblationRow> rows;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    if (k > session.references().size() || k > session.queries().size()) {
      warn(fmt::format("k={} exceeds the traverse length; skipped", k));
      continue;
    }
    const BenchmarkRun run = session.run_fixed(k, o.config, loaded.ground_truth);
    rows.push_back({k, run.report.accuracy, run.report.auc_pr,
                    loaded.seconds_per_frame * static_cast<double>(k)});
  }
  write_text(o.out_dir / "ablation.csv", ablation_csv(rows));
  nlohmann::json manifest = make_manifest(o, "ablate");
  manifest["k_min"] = k_min;
  manifest["k_max"] = k_max;
  write_json(o.out_dir / "manifest.json", manifest);
  return rows;
}

std::vector<SequenceDecision> cmd_seqlens(const RunOptions& o) {
  o.config.validate();
  ensure_out_dir(o.out_dir);
  const auto rasters = load_rasters(o.dataset.query, o.threads);
  const auto frames = encode_rasters(rasters, o.config, o.threads);
  auto decisions = decide_all(frames, o.config, o.threads);
  write_text(o.out_dir / "seq_lengths.csv", seq_lengths_csv(decisions));
  write_text(o.out_dir / "seq_length_histogram.csv", seq_length_histogram_csv(decisions));
  write_json(o.out_dir / "manifest.json", make_manifest(o, "seqlens"));
  return decisions;
}

void cmd_gen_synthetic(const SyntheticOptions& so, const fs::path& out_dir) {
  const SyntheticPair pair = generate_synthetic_traverse(so);
  write_synthetic_dataset(out_dir, pair);
  const nlohmann::json meta = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"seed", so.seed},
      {"frames", so.frames},
      {"width", so.width},
      {"height", so.height},
      {"step_px", so.step_px},
      {"tile_px", so.tile_px},
      {"motifs", so.motifs},
      {"shift_px", so.variation.shift_px},
      {"brightness_gain", so.variation.brightness_gain},
      {"noise_level", so.variation.noise_level},
  };
  write_json(out_dir / "synthetic.json", meta);
}

}  // namespace convseq
