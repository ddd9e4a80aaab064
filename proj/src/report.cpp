#include "convseq/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "convseq/error.hpp"

namespace convseq {

nlohmann::json report_to_json(const BenchmarkReport& r) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.pr_points) {
    points.push_back({{"precision", p.precision}, {"recall", p.recall}});
  }
  nlohmann::json j;
  j["accuracy"] = r.accuracy;
  j["auc_pr"] = r.auc_pr;
  j["p_r100"] = r.p_r100;
  j["query_frames"] = r.query_frames;
  j["reference_frames"] = r.reference_frames;
  j["matched_queries"] = r.matched;
  j["mean_sequence_length"] = r.mean_sequence_length;
  j["tolerance"] = r.tolerance;
  j["pr_points"] = std::move(points);
  j["timing"] = {
      {"t_e_per_frame", r.t_e_per_frame},
      {"t_e", r.t_e},
      {"t_e_max", r.t_e_max},
      {"pcu", r.pcu},
  };
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw io_error(fmt::format("failed writing {}", path.string()));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string pr_curve_csv(std::span<const PrPoint> points) {
  std::string out = "precision,recall\n";
  for (const auto& p : points) out += fmt::format("{},{}\n", p.precision, p.recall);
  return out;
}

std::string matches_csv(std::span<const MatchRecord> records, const std::vector<bool>& judged,
                        const GroundTruth& gt) {
  std::string out = "query_start,best_ref_start,best_score,k,true_ref,correct\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto truth = gt.truth(r.query_start);
    out += fmt::format("{},{},{},{},{},{}\n", r.query_start, r.predicted_ref, r.score, r.length,
                       truth ? fmt::format("{}", *truth) : std::string{},
                       i < judged.size() && judged[i] ? 1 : 0);
  }
  return out;
}

std::string seq_lengths_csv(std::span<const SequenceDecision> decisions) {
  std::string out = "start,info_gain_length,final_length,seq_entropy\n";
  for (const auto& d : decisions) {
    out += fmt::format("{},{},{},{}\n", d.start, d.info_gain_length, d.final_length, d.seq_entropy);
  }
  return out;
}

std::map<std::size_t, std::size_t> length_histogram(std::span<const SequenceDecision> decisions) {
  std::map<std::size_t, std::size_t> h;
  for (const auto& d : decisions) ++h[d.final_length];
  return h;
}

std::string seq_length_histogram_csv(std::span<const SequenceDecision> decisions) {
  std::string out = "length,count\n";
  for (const auto& [len, count] : length_histogram(decisions)) {
    out += fmt::format("{},{}\n", len, count);
  }
  return out;
}

std::string ablation_csv(std::span<const AblationRow> rows) {
  std::string out = "k,accuracy,auc_pr,mean_t_e\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", r.k, r.accuracy, r.auc_pr, r.mean_t_e);
  }
  return out;
}

std::string pr_curve_svg(std::span<const PrPoint> points, const std::string& title) {
  constexpr double kSize = 400.0;
  constexpr double kMargin = 50.0;
  auto px = [&](double recall) { return kMargin + recall * kSize; };
  auto py = [&](double precision) { return kMargin + (1.0 - precision) * kSize; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kSize + 2 * kMargin);
  svg += fmt::format("<text x=\"{}\" y=\"25\" text-anchor=\"middle\">{}</text>\n",
                     kMargin + kSize / 2, title);
  svg += fmt::format(
      "<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"black\"/>\n",
      kMargin, kSize);
  for (int t = 0; t <= 10; ++t) {
    const double v = t / 10.0;
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.1f}</text>\n", px(v),
                       kMargin + kSize + 16, v);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.1f}</text>\n",
                       kMargin - 6, py(v) + 4, v);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">Recall</text>\n",
                     kMargin + kSize / 2, kMargin + kSize + 36);
  svg += fmt::format(
      "<text x=\"15\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 15 {0})\">"
      "Precision</text>\n",
      kMargin + kSize / 2);

  std::string path;
  if (!points.empty()) {
    path += fmt::format("{:.2f},{:.2f}", px(0.0), py(points.front().precision));
    for (const auto& p : points) path += fmt::format(" {:.2f},{:.2f}", px(p.recall), py(p.precision));
  }
  svg += fmt::format("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" "
                     "points=\"{}\"/>\n</svg>\n",
                     path);
  return svg;
}

}  // namespace convseq
