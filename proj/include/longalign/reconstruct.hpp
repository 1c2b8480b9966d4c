#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "longalign/core.hpp"
#include "longalign/wavefront.hpp"

namespace longalign {

/// A rectangle of the DP matrix to be aligned globally with a known score.
/// The gap flags force the path to begin / end with a DELETE, which is how a
/// vertical gap crossing a split row is carried into both children.
struct Subproblem {
  Coord start;
  Coord end;
  Score expected = 0;
  bool begins_with_gap = false;
  bool ends_with_gap = false;

  std::int64_t rows() const { return end.i - start.i; }
  std::int64_t cols() const { return end.j - start.j; }
};

struct EditBound {
  std::int64_t t_edit = 0;   // max(rows, cols) - floor(score / max_sub), >= 0
  std::int64_t padding = 0;  // diagonals admitted on each side of the corridor
};

EditBound edit_bound(const Subproblem& sub, const ScoringScheme& scheme);

/// Admissible j - i interval (rectangle-local) containing every alignment of
/// the rectangle that scores sub.expected.
DiagonalBand subproblem_band(const Subproblem& sub, const ScoringScheme& scheme);

struct Crossing {
  Coord mid;
  Score upper_score = 0;
  Score lower_score = 0;
  bool gap_join = false;  // a single DELETE run spans the split row
};

/// Forward pass over the top half and reverse pass over the bottom half, then
/// picks the smallest column maximising H_up + H_down (or F_up + F_down +
/// gap_open for a shared vertical gap; H preferred on ties). Requires >= 2 rows.
Crossing find_crossing(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                       const Subproblem& sub, const ScoringScheme& scheme, bool use_band,
                       const EngineConfig& config);

/// Combines middle rows (indexed by column 0..cols in forward orientation).
/// Returns the winning column, summed score and join kind; nullopt when no
/// column is reachable from both sides.
struct MiddleChoice {
  std::int64_t column = 0;
  std::int64_t score = 0;
  bool gap_join = false;
};
std::optional<MiddleChoice> combine_middle(std::span<const Score> up_h, std::span<const Score> up_f,
                                           std::span<const Score> down_h,
                                           std::span<const Score> down_f, Score gap_open);

/// Quadratic-memory global alignment of a small rectangle honouring the gap
/// flags. Throws ScoreMismatch if the optimum differs from sub.expected.
AlignmentPath leaf_align(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                         const Subproblem& sub, const ScoringScheme& scheme, bool use_band);

/// Concatenates coordinate-contiguous parts.
AlignmentPath join_paths(std::span<const AlignmentPath> parts);

struct ReconstructOptions {
  std::int64_t leaf_limit = 128 * 128;
  bool band = true;
  bool concurrent_leaves = true;
};

struct ReconstructStats {
  std::int64_t splits = 0;
  std::int64_t leaves = 0;
  std::int64_t pass_cells = 0;
  std::int64_t max_leaf_cells = 0;
};

AlignmentPath reconstruct_subproblem(std::span<const std::uint8_t> seq1,
                                     std::span<const std::uint8_t> seq2, const Subproblem& sub,
                                     const ScoringScheme& scheme, const ReconstructOptions& options,
                                     const EngineConfig& config, ReconstructStats* stats = nullptr);

/// Full path between summary.start and summary.end scoring summary.score.
AlignmentPath reconstruct(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                          const ScoringScheme& scheme, const AlignmentSummary& summary,
                          const ReconstructOptions& options, const EngineConfig& config,
                          ReconstructStats* stats = nullptr);

}  // namespace longalign
