#pragma once

#include <cstdint>
#include <utility>

#include "longalign/core.hpp"

namespace longalign::oracle {

// Quadratic-memory Gotoh DP with full traceback. Deliberately unoptimized:
// this is the ground truth the linear-memory pipeline is checked against.

inline constexpr std::int64_t kDefaultCellBudget = 100'000'000;

enum class BorderRule {
  AffineGaps,     // H[0][j] = -(go + j*ge), H[i][0] = -(go + i*ge)
  MinusInfinity,  // H[0][0] = 0, every other border cell unreachable
};

/// Best local alignment. Among co-optimal endpoints the lexicographically
/// smallest (end.i, end.j) wins; all-negative inputs give score 0 at (0,0).
std::pair<AlignmentSummary, AlignmentPath> oracle_local(
    const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
    std::int64_t cell_budget = kDefaultCellBudget);

/// Best global alignment of the full sequences. Returns kNegInf and an empty
/// path when no alignment is admissible under the border rule.
std::pair<std::int64_t, AlignmentPath> oracle_global(
    const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
    BorderRule border_rule, std::int64_t cell_budget = kDefaultCellBudget);

}  // namespace longalign::oracle
