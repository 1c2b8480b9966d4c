#pragma once

#include <cstdint>

#include "longalign/core.hpp"

namespace longalign {

/// State consulted by the block-pruning test. `best_so_far` is the best score
/// published before the current anti-diagonal started; the extents give the
/// full matrix size the remaining-length bound is measured against.
struct PruneContext {
  Score best_so_far = 0;
  Score max_substitution_score = 1;
  std::int64_t extent_rows = 0;
  std::int64_t extent_cols = 0;
};

/// True when no alignment passing through a block whose input boundaries peak
/// at `block_input_max` can reach `best_so_far`:
///   input_max + max_sub * min(rows left, cols left) < best_so_far.
/// Strict, so equal-scoring alignments are never pruned.
bool prune_verdict(const PruneContext& ctx, Score block_input_max, Coord block_origin);

}  // namespace longalign
