#include "convseq/seqmatch.hpp"

#include <fmt/format.h>

#include "convseq/error.hpp"
#include "convseq/parallel.hpp"

namespace convseq {

namespace {

// Window scores are filled in; picks the first maximum.
template <typename WindowScore>
std::optional<SequenceMatchResult> search_windows(std::size_t query_start, std::size_t k,
                                                  std::size_t ref_count, WindowScore&& score) {
  if (k == 0 || ref_count < k) return std::nullopt;
  SequenceMatchResult res;
  res.query_start = query_start;
  res.length = k;
  res.window_scores.resize(ref_count - k + 1);
  for (std::size_t itr = 0; itr + k <= ref_count; ++itr) {
    const double s = score(itr);
    res.window_scores[itr] = s;
    if (itr == 0 || s > res.best_score) {
      res.best_score = s;
      res.best_ref_start = itr;
    }
  }
  return res;
}

}  // namespace

double sequence_matching_func(const QuerySequence& qseq,
                              std::span<const ImageDescriptor> reference_window) {
  if (qseq.length() != reference_window.size() || qseq.length() == 0) {
    throw internal_error(fmt::format("sequence of {} frames scored against a window of {}",
                                     qseq.length(), reference_window.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < qseq.length(); ++i) {
    sum += match_images(qseq.members[i].query, reference_window[i]);
  }
  return sum / static_cast<double>(qseq.length());
}

std::optional<SequenceMatchResult> match_sequence(const QuerySequence& qseq,
                                                  std::span<const ImageDescriptor> refs) {
  const std::size_t k = qseq.length();
  auto res = search_windows(qseq.start, k, refs.size(), [&](std::size_t itr) {
    return sequence_matching_func(qseq, refs.subspan(itr, k));
  });
  if (res) {
    for (std::size_t i = 0; i < k; ++i) {
      res->pair_scores.push_back(match_images(qseq.members[i].query, refs[res->best_ref_start + i]));
    }
  }
  return res;
}

std::vector<PreparedReference> prepare_references(std::span<const ImageDescriptor> refs,
                                                  std::size_t threads) {
  std::vector<PreparedReference> out(refs.size());
  parallel_for(refs.size(), threads, [&](std::size_t i) { out[i] = PreparedReference(refs[i]); });
  return out;
}

PairScoreTable::PairScoreTable(std::span<const EncodedFrame> queries,
                               std::span<const PreparedReference> refs, std::size_t threads)
    : queries_(queries.size()), references_(refs.size()),
      scores_(queries.size() * refs.size(), 0.0) {
  parallel_for(queries_, threads, [&](std::size_t q) {
    for (std::size_t r = 0; r < references_; ++r) {
      scores_[q * references_ + r] = match_images(queries[q].query, refs[r]);
    }
  });
}

std::optional<SequenceMatchResult> match_sequence(const PairScoreTable& table,
                                                  std::size_t query_start, std::size_t length) {
  if (query_start + length > table.queries()) {
    throw internal_error(fmt::format("sequence [{}, {}) overruns {} query frames", query_start,
                                     query_start + length, table.queries()));
  }
  auto res = search_windows(query_start, length, table.references(), [&](std::size_t itr) {
    double sum = 0.0;
    for (std::size_t i = 0; i < length; ++i) sum += table(query_start + i, itr + i);
    return sum / static_cast<double>(length);
  });
  if (res) {
    for (std::size_t i = 0; i < length; ++i) {
      res->pair_scores.push_back(table(query_start + i, res->best_ref_start + i));
    }
  }
  return res;
}

}  // namespace convseq
