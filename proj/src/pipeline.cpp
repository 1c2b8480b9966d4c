#include "longalign/pipeline.hpp"

#include <algorithm>

#include "longalign/locate_phase.hpp"
#include "longalign/score_phase.hpp"
#include "longalign/split.hpp"

namespace longalign {

const char* to_string(MidCase c) {
  switch (c) {
    case MidCase::Upper: return "upper";
    case MidCase::Lower: return "lower";
    case MidCase::Midpoint: return "midpoint";
  }
  return "?";
}

std::optional<BandSpec> search_band(const AlignOptions& options, Score score, std::int64_t rows,
                                    std::int64_t cols, const ScoringScheme& scheme) {
  if (!options.band) return std::nullopt;
  return anchored_band(score, std::min(rows, cols), std::max(rows, cols), scheme);
}

AlignResult align_single(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                         const ScoringScheme& scheme, const AlignOptions& options) {
  AlignResult result;
  const ScoreEnd se = best_local(seq1, seq2, scheme, options.engine, options.prune);
  result.stats.score_pass = se.stats;
  if (se.score <= 0) return result;

  const auto band = search_band(options, se.score, se.end.i, se.end.j, scheme);
  const Coord start = locate_start(seq1, seq2, scheme, se.end, se.score, band, options.engine,
                                   Border{BorderKind::Anchored, false}, &result.stats.locate_pass);
  result.summary = AlignmentSummary{se.score, start, se.end};
  result.path = reconstruct(seq1, seq2, scheme, result.summary,
                            ReconstructOptions{options.leaf_limit, options.band,
                                               options.concurrent_leaves},
                            options.engine, &result.stats.reconstruct);
  return result;
}

AlignResult align(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                  const ScoringScheme& scheme, const AlignOptions& options) {
  if (options.split == 1) return align_single(seq1, seq2, scheme, options);
  return split_align(seq1, seq2, scheme, options, options.split);
}

AlignResult align(const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
                  const AlignOptions& options) {
  const auto a = scheme.alphabet().encode(seq1.residues);
  const auto b = scheme.alphabet().encode(seq2.residues);
  return align(a, b, scheme, options);
}

}  // namespace longalign
