#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "convseq/config.hpp"
#include "convseq/saliency.hpp"

namespace convseq {

// 1 - match_images(a, b).
double information_gain(const QueryDescriptor& a, const ImageDescriptor& b);

struct InfoGainTrace {
  std::size_t length = 0;
  std::vector<double> gains;  // one per comparison, in order
  bool truncated = false;     // min_k itself overruns the traverse
};

// Starting at k = min_k, compares frame `start` (query role) with frame
// start + k (reference role) and extends k while the gain is >= IT, up to
// max_k_info_gain. Throws Error{Range} when start is out of range.
InfoGainTrace initial_sequence_length(std::span<const EncodedFrame> traverse, std::size_t start,
                                      const PipelineConfig& cfg);

struct SequenceDecision {
  std::size_t start = 0;
  std::size_t info_gain_length = 0;
  std::size_t final_length = 0;
  double seq_entropy = 0.0;
  std::vector<double> gains;
  // The traverse ended before a decision was reached; the length was clamped
  // to the frames available and the start is not matched.
  bool truncated = false;

  bool operator==(const SequenceDecision&) const = default;
};

// Grows k from info_gain_length by seq_step until the mean image entropy of
// frames [start, start + k) reaches ET or k reaches max_k.
SequenceDecision dynamic_sequence_length(std::span<const double> traverse_entropies,
                                         std::size_t start, std::size_t info_gain_length,
                                         const PipelineConfig& cfg);

// Both stages for one start index.
SequenceDecision decide_sequence(std::span<const EncodedFrame> traverse, std::size_t start,
                                 const PipelineConfig& cfg);

// Decisions for starts 0, 1, ... up to (not including) the first truncated one.
std::vector<SequenceDecision> decide_all(std::span<const EncodedFrame> traverse,
                                         const PipelineConfig& cfg, std::size_t threads = 1);

// A view of consecutive traverse frames; valid while the traverse is alive.
struct QuerySequence {
  std::size_t start = 0;
  std::span<const EncodedFrame> members;

  std::size_t length() const noexcept { return members.size(); }
};

QuerySequence make_query_sequence(std::span<const EncodedFrame> traverse,
                                  const SequenceDecision& decision);

// nullopt when the decision for `start` is truncated by the traverse end.
std::optional<QuerySequence> build_query_sequence(std::span<const EncodedFrame> traverse,
                                                  std::size_t start, const PipelineConfig& cfg);

}  // namespace convseq
