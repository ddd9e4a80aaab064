#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "convseq/pipeline.hpp"

namespace convseq {

// Timing-dependent fields live under "timing" so the rest of the document
// is reproducible byte for byte.
nlohmann::json report_to_json(const BenchmarkReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// precision,recall
std::string pr_curve_csv(std::span<const PrPoint> points);
// query_start,best_ref_start,best_score,k,true_ref,correct
std::string matches_csv(std::span<const MatchRecord> records, const std::vector<bool>& judged,
                        const GroundTruth& gt);
// start,info_gain_length,final_length,seq_entropy
std::string seq_lengths_csv(std::span<const SequenceDecision> decisions);
// length,count
std::string seq_length_histogram_csv(std::span<const SequenceDecision> decisions);

std::map<std::size_t, std::size_t> length_histogram(std::span<const SequenceDecision> decisions);

struct AblationRow {
  std::size_t k = 0;
  double accuracy = 0.0;
  double auc_pr = 0.0;
  double mean_t_e = 0.0;
};
// k,accuracy,auc_pr,mean_t_e
std::string ablation_csv(std::span<const AblationRow> rows);

// Standalone SVG of the PR curve, both axes spanning [0, 1].
std::string pr_curve_svg(std::span<const PrPoint> points, const std::string& title);

}  // namespace convseq
