#include "convseq/sequencer.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "convseq/error.hpp"
#include "convseq/matcher.hpp"
#include "convseq/parallel.hpp"

namespace convseq {

double information_gain(const QueryDescriptor& a, const ImageDescriptor& b) {
  return 1.0 - match_images(a, b);
}

InfoGainTrace initial_sequence_length(std::span<const EncodedFrame> traverse, std::size_t start,
                                      const PipelineConfig& cfg) {
  if (start >= traverse.size()) {
    throw range_error(fmt::format("start {} outside traverse of {} frames", start,
                                  traverse.size()));
  }
  InfoGainTrace trace;
  std::size_t k = cfg.min_k;
  if (start + k > traverse.size()) trace.truncated = true;

  const QueryDescriptor& first = traverse[start].query;
  while (!trace.truncated && k < cfg.max_k_info_gain) {
    const std::size_t next = start + k;
    if (next >= traverse.size()) break;
    const double gain = information_gain(first, traverse[next].descriptor);
    trace.gains.push_back(gain);
    if (gain < cfg.info_threshold) break;
    ++k;
  }
  trace.length = k;
  return trace;
}

namespace {

double mean_entropy(std::span<const double> entropies, std::size_t start, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = start; i < start + k; ++i) sum += entropies[i];
  return k == 0 ? 0.0 : sum / static_cast<double>(k);
}

}  // namespace

SequenceDecision dynamic_sequence_length(std::span<const double> traverse_entropies,
                                         std::size_t start, std::size_t info_gain_length,
                                         const PipelineConfig& cfg) {
  if (info_gain_length < cfg.min_k || info_gain_length > cfg.max_k) {
    throw range_error(fmt::format("info-gain length {} outside [{}, {}]", info_gain_length,
                                  cfg.min_k, cfg.max_k));
  }
  if (start >= traverse_entropies.size()) {
    throw range_error(fmt::format("start {} outside traverse of {} frames", start,
                                  traverse_entropies.size()));
  }
  SequenceDecision d;
  d.start = start;
  d.info_gain_length = info_gain_length;
  const std::size_t available = traverse_entropies.size() - start;

  std::size_t k = info_gain_length;
  if (k > available) {
    d.truncated = true;
    k = available;
  }
  while (true) {
    d.seq_entropy = mean_entropy(traverse_entropies, start, k);
    if (d.truncated || d.seq_entropy >= cfg.entropy_threshold || k >= cfg.max_k) break;
    const std::size_t next = std::min(k + cfg.seq_step, cfg.max_k);
    if (next > available) {
      d.truncated = true;
      k = available;
      continue;
    }
    k = next;
  }
  d.final_length = k;
  return d;
}

namespace {

std::vector<double> frame_entropies(std::span<const EncodedFrame> traverse) {
  std::vector<double> entropies(traverse.size());
  std::transform(traverse.begin(), traverse.end(), entropies.begin(),
                 [](const EncodedFrame& f) { return f.entropy; });
  return entropies;
}

SequenceDecision decide(std::span<const EncodedFrame> traverse, std::span<const double> entropies,
                        std::size_t start, const PipelineConfig& cfg) {
  InfoGainTrace trace = initial_sequence_length(traverse, start, cfg);
  SequenceDecision d = dynamic_sequence_length(entropies, start, trace.length, cfg);
  d.gains = std::move(trace.gains);
  d.truncated = d.truncated || trace.truncated;
  return d;
}

}  // namespace

SequenceDecision decide_sequence(std::span<const EncodedFrame> traverse, std::size_t start,
                                 const PipelineConfig& cfg) {
  return decide(traverse, frame_entropies(traverse), start, cfg);
}

std::vector<SequenceDecision> decide_all(std::span<const EncodedFrame> traverse,
                                         const PipelineConfig& cfg, std::size_t threads) {
  const std::vector<double> entropies = frame_entropies(traverse);
  std::vector<SequenceDecision> all(traverse.size());
  parallel_for(traverse.size(), threads,
               [&](std::size_t s) { all[s] = decide(traverse, entropies, s, cfg); });
  auto first_truncated = std::find_if(all.begin(), all.end(),
                                      [](const SequenceDecision& d) { return d.truncated; });
  all.erase(first_truncated, all.end());
  return all;
}

QuerySequence make_query_sequence(std::span<const EncodedFrame> traverse,
                                  const SequenceDecision& decision) {
  if (decision.start + decision.final_length > traverse.size()) {
    throw internal_error("sequence decision overruns the traverse");
  }
  return {decision.start, traverse.subspan(decision.start, decision.final_length)};
}

std::optional<QuerySequence> build_query_sequence(std::span<const EncodedFrame> traverse,
                                                  std::size_t start, const PipelineConfig& cfg) {
  const SequenceDecision d = decide_sequence(traverse, start, cfg);
  if (d.truncated) return std::nullopt;
  return make_query_sequence(traverse, d);
}

}  // namespace convseq
