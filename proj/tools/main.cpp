#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "convseq/commands.hpp"
#include "convseq/error.hpp"
#include "convseq/parallel.hpp"

namespace {

using namespace convseq;

struct Overrides {
  std::optional<double> et, it, t_e_max;
  std::optional<std::size_t> min_k, max_k_info_gain, max_k, seq_step;
  std::optional<std::size_t> image_size, cell_size, bins, entropy_radius;
  std::optional<std::size_t> tolerance, threads;
  std::optional<std::string> config_file, manifest_file;
  std::optional<std::string> dataset, query, reference, ground_truth, cache;
  std::string out = "convseq_out";
  bool svg = false;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(fmt::format("cannot open {}", path));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(fmt::format("{}: {}", path, e.what()));
  }
}

void add_common(CLI::App& cmd, Overrides& o, bool needs_reference) {
  cmd.add_option("--config", o.config_file, "JSON file with pipeline parameters");
  cmd.add_option("--manifest", o.manifest_file, "Re-run from a manifest.json");
  cmd.add_option("--dataset", o.dataset, "Directory holding query/, reference/ and ground_truth.csv");
  cmd.add_option("--query", o.query, "Query traverse directory");
  if (needs_reference) {
    cmd.add_option("--reference", o.reference, "Reference traverse directory");
    cmd.add_option("--ground-truth", o.ground_truth, "CSV of query_index,reference_index");
    cmd.add_option("--tolerance", o.tolerance, "Frames of slack when judging a match");
    cmd.add_option("--t-e-max", o.t_e_max, "Maximum encoding time for PCU, seconds");
    cmd.add_option("--cache", o.cache, "Reference descriptor cache file");
  }
  cmd.add_option("--et", o.et, "Entropy threshold ET");
  cmd.add_option("--it", o.it, "Information-gain threshold IT");
  cmd.add_option("--min-k", o.min_k);
  cmd.add_option("--max-k-info-gain", o.max_k_info_gain);
  cmd.add_option("--max-k", o.max_k);
  cmd.add_option("--seq-step", o.seq_step);
  cmd.add_option("--image-size", o.image_size, "Square working resolution");
  cmd.add_option("--cell-size", o.cell_size, "Square cell size");
  cmd.add_option("--bins", o.bins, "Orientation bins");
  cmd.add_option("--entropy-radius", o.entropy_radius);
  cmd.add_option("--threads", o.threads, "Worker threads (default CONVSEQ_THREADS or all cores)");
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
}

RunOptions resolve(const Overrides& o) {
  RunOptions r;
  if (o.config_file) from_json(read_json_file(*o.config_file), r.config);
  if (o.manifest_file) apply_manifest(read_json_file(*o.manifest_file), r);

  if (o.dataset) {
    r.dataset = resolve_dataset(*o.dataset);
    const fs::path synth = fs::path(*o.dataset) / "synthetic.json";
    std::error_code ec;
    if (fs::is_regular_file(synth, ec)) {
      const auto meta = read_json_file(synth.string());
      if (meta.contains("seed")) r.seed = meta.at("seed").get<std::uint64_t>();
    }
  }
  if (o.query) r.dataset.query = *o.query;
  if (o.reference) r.dataset.reference = *o.reference;
  if (o.ground_truth) r.dataset.ground_truth = fs::path(*o.ground_truth);
  if (o.cache) r.reference_cache = fs::path(*o.cache);
  if (o.tolerance) r.tolerance = *o.tolerance;
  if (o.t_e_max) r.t_e_max = *o.t_e_max;

  PipelineConfig& c = r.config;
  if (o.et) c.entropy_threshold = *o.et;
  if (o.it) c.info_threshold = *o.it;
  if (o.min_k) c.min_k = *o.min_k;
  if (o.max_k_info_gain) c.max_k_info_gain = *o.max_k_info_gain;
  if (o.max_k) c.max_k = *o.max_k;
  if (o.seq_step) c.seq_step = *o.seq_step;
  if (o.image_size) c.image_width = c.image_height = *o.image_size;
  if (o.cell_size) c.cell_width = c.cell_height = *o.cell_size;
  if (o.bins) c.bins = *o.bins;
  if (o.entropy_radius) c.entropy_radius = *o.entropy_radius;
  c.validate();

  if (r.dataset.query.empty()) throw config_error("no query traverse (use --dataset or --query)");
  r.threads = resolve_thread_count(o.threads);
  r.out_dir = o.out;
  r.svg = o.svg;
  return r;
}

void require_reference(const RunOptions& r) {
  if (r.dataset.reference.empty()) {
    throw config_error("no reference traverse (use --dataset or --reference)");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Sequence-based visual place recognition benchmark"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Overrides bench;
  auto* benchmark = app.add_subcommand("benchmark", "Full pipeline plus evaluation");
  add_common(*benchmark, bench, true);
  benchmark->add_flag("--svg", bench.svg, "Also write pr_curve.svg");

  Overrides abl;
  std::size_t k_min = 1;
  std::size_t k_max = 20;
  auto* ablate = app.add_subcommand("ablate", "Fixed-k sweep");
  add_common(*ablate, abl, true);
  ablate->add_option("--k-min", k_min)->capture_default_str();
  ablate->add_option("--k-max", k_max)->capture_default_str();

  Overrides seq;
  auto* seqlens = app.add_subcommand("seqlens", "Sequence-length distribution of a traverse");
  add_common(*seqlens, seq, false);

  SyntheticOptions so;
  std::string synth_out = "synthetic";
  auto* gen = app.add_subcommand("gen-synthetic", "Write a seeded synthetic dataset");
  gen->add_option("--seed", so.seed)->capture_default_str();
  gen->add_option("--frames,-n", so.frames)->capture_default_str();
  gen->add_option("--width", so.width)->capture_default_str();
  gen->add_option("--height", so.height)->capture_default_str();
  gen->add_option("--step", so.step_px, "World drift per frame, px")->capture_default_str();
  gen->add_option("--tile", so.tile_px, "Motif width, px")->capture_default_str();
  gen->add_option("--motifs", so.motifs)->capture_default_str();
  gen->add_option("--shift", so.variation.shift_px, "Query shift, px")->capture_default_str();
  gen->add_option("--gain", so.variation.brightness_gain)->capture_default_str();
  gen->add_option("--noise", so.variation.noise_level, "Gaussian noise sigma")->capture_default_str();
  gen->add_option("--out", synth_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fmt::print(stderr, "error: {}: {}\n", category_name(ErrorCategory::Config), e.what());
    return exit_code(ErrorCategory::Config);
  }

  if (benchmark->parsed()) {
    const RunOptions r = resolve(bench);
    require_reference(r);
    const BenchmarkRun out = cmd_benchmark(r);
    const auto& rep = out.report;
    fmt::print("accuracy={:.6f} auc_pr={:.6f} p_r100={:.6f} pcu={:.6f} matched={} out={}\n",
               rep.accuracy, rep.auc_pr, rep.p_r100, rep.pcu, rep.matched, r.out_dir.string());
  } else if (ablate->parsed()) {
    const RunOptions r = resolve(abl);
    require_reference(r);
    for (const auto& row : cmd_ablate(r, k_min, k_max)) {
      fmt::print("k={} accuracy={:.6f} auc_pr={:.6f} mean_t_e={:.6f}\n", row.k, row.accuracy,
                 row.auc_pr, row.mean_t_e);
    }
  } else if (seqlens->parsed()) {
    const RunOptions r = resolve(seq);
    const auto decisions = cmd_seqlens(r);
    fmt::print("starts={} out={}\n", decisions.size(), r.out_dir.string());
  } else if (gen->parsed()) {
    cmd_gen_synthetic(so, synth_out);
    fmt::print("frames={} out={}\n", so.frames, synth_out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const convseq::Error& e) {
    fmt::print(stderr, "error: {}: {}\n", convseq::category_name(e.category()), e.what());
    return convseq::exit_code(e.category());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}: {}\n", convseq::category_name(convseq::ErrorCategory::Internal),
               e.what());
    return convseq::exit_code(convseq::ErrorCategory::Internal);
  }
}
