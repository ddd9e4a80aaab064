#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "convseq/matcher.hpp"
#include "convseq/sequencer.hpp"

namespace convseq {

struct SequenceMatchResult {
  std::size_t query_start = 0;
  std::size_t best_ref_start = 0;  // lowest window start attaining best_score
  std::size_t length = 0;
  double best_score = 0.0;
  std::vector<double> window_scores;  // one per reference window start
  std::vector<double> pair_scores;    // the k frame scores of the winning window
};

// Mean of match_images over the k aligned (query, reference) pairs. Throws
// Error{Internal} when the lengths differ.
double sequence_matching_func(const QuerySequence& qseq,
                              std::span<const ImageDescriptor> reference_window);

// Scores every window start in [0, len(refs) - k]. nullopt when the reference
// traverse is shorter than the sequence.
std::optional<SequenceMatchResult> match_sequence(const QuerySequence& qseq,
                                                  std::span<const ImageDescriptor> refs);

// match_images for every (query frame, reference frame) pair, computed once.
// Overlapping windows share entries, so the window search becomes table lookups that
// reproduce the direct computation bit for bit.
class PairScoreTable {
 public:
  PairScoreTable() = default;
  PairScoreTable(std::span<const EncodedFrame> queries, std::span<const PreparedReference> refs,
                 std::size_t threads = 1);

  std::size_t queries() const noexcept { return queries_; }
  std::size_t references() const noexcept { return references_; }
  double operator()(std::size_t q, std::size_t r) const { return scores_[q * references_ + r]; }

 private:
  std::size_t queries_ = 0;
  std::size_t references_ = 0;
  std::vector<double> scores_;
};

std::vector<PreparedReference> prepare_references(std::span<const ImageDescriptor> refs,
                                                  std::size_t threads = 1);

// Same result as the descriptor overload for the sequence of `length` query
// frames starting at `query_start`.
std::optional<SequenceMatchResult> match_sequence(const PairScoreTable& table,
                                                  std::size_t query_start, std::size_t length);

}  // namespace convseq
