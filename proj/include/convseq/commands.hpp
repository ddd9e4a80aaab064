#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "convseq/config.hpp"
#include "convseq/datasetio.hpp"
#include "convseq/pipeline.hpp"
#include "convseq/report.hpp"

namespace convseq {

inline constexpr std::string_view kToolName = "convseq";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct DatasetPaths {
  fs::path query;
  fs::path reference;
  std::optional<fs::path> ground_truth;
};

// <root>/query, <root>/reference and, if present, <root>/ground_truth.csv.
DatasetPaths resolve_dataset(const fs::path& root);

struct RunOptions {
  PipelineConfig config;
  DatasetPaths dataset;
  std::size_t tolerance = 2;
  std::size_t threads = 1;
  double t_e_max = kDefaultMaxEncodingTime;
  std::optional<fs::path> reference_cache;
  std::optional<std::uint64_t> seed;  // provenance of synthetic datasets
  bool svg = false;
  fs::path out_dir = "convseq_out";
};

// The run manifest: everything needed to reproduce a command's outputs.
nlohmann::json make_manifest(const RunOptions& options, std::string_view command);

// Inverse of make_manifest for the reproducible fields (out_dir, threads and
// svg are left at their current values).
void apply_manifest(const nlohmann::json& manifest, RunOptions& options);

// Encodes, sequences, matches and evaluates, then writes report.json,
// pr_curve.csv, matches.csv, seq_lengths.csv and manifest.json (plus
// pr_curve.svg on request) into options.out_dir.
BenchmarkRun cmd_benchmark(const RunOptions& options);

// Fixed k for every k in [k_min, k_max]; writes ablation.csv and
// manifest.json. k larger than either traverse is skipped with a warning.
std::vector<AblationRow> cmd_ablate(const RunOptions& options, std::size_t k_min,
                                    std::size_t k_max);

// Sequencer only, over the query traverse; writes seq_lengths.csv,
// seq_length_histogram.csv and manifest.json.
std::vector<SequenceDecision> cmd_seqlens(const RunOptions& options);

// Writes the synthetic dataset layout plus synthetic.json describing it.
void cmd_gen_synthetic(const SyntheticOptions& options, const fs::path& out_dir);

}  // namespace convseq
