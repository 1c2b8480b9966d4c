#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "longalign/core.hpp"
#include "longalign/wavefront.hpp"

namespace longalign {

/// Ukkonen-style band parameters. n is the shorter and m the longer length;
/// the admissible diagonals are expressed as index_in_longer -
/// index_in_shorter.
struct BandSpec {
  std::int64_t t = 0;        // deformation: floor(score / max substitution)
  std::int64_t m_prime = 0;  // maximum extent in the longer sequence
  std::int64_t p = 0;        // padding
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t diag_lo = 0;
  std::int64_t diag_hi = 0;
  bool degenerate = false;   // t exceeded n and was clamped

  friend bool operator==(const BandSpec&, const BandSpec&) = default;
};

/// t = floor(score / max_sub), m' = min(n + floor((n - t) / ge), m),
/// p = max(0, ceil((2n - t - m') / 2)); diagonals [-p, p + (m - n)].
BandSpec compute_band(Score score, std::int64_t n, std::int64_t m, const ScoringScheme& scheme);

/// Band for a search anchored at one corner whose far end is free (the
/// start-point search). Keeps t, m' and p from compute_band but widens the
/// diagonal interval to the deviation any alignment of the given score can
/// actually reach, so the band never excludes an optimal alignment.
BandSpec anchored_band(Score score, std::int64_t n, std::int64_t m, const ScoringScheme& scheme);

/// Converts a band to a j - i interval for a pass whose rows have
/// `row_len` residues and columns `col_len`.
DiagonalBand to_diagonal_band(const BandSpec& band, std::int64_t row_len, std::int64_t col_len);

/// Constrained pass starting at the origin of (rows, cols) with a free far
/// end: no zero clamp. An Anchored border forces the first op to be a
/// substitution; a Global border also admits leading gaps. Returns the cell
/// attaining `target` that is extreme under `track` (MaxLargest or
/// MaxSmallest). Throws StartNotFound when no cell attains the target.
Coord anchored_search(std::span<const std::uint8_t> rows, std::span<const std::uint8_t> cols,
                      const ScoringScheme& scheme, Score target,
                      std::optional<DiagonalBand> band, Border border, kernel::Track track,
                      const EngineConfig& config, WavefrontStats* stats = nullptr);

/// Start point of the optimal local alignment ending at `end` with `score`:
/// the smallest forward coordinate whose reversed anchored score equals
/// `score`. `border` applies to the reversed pass: the default Anchored
/// border makes the alignment end in a substitution at `end`.
Coord locate_start(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                   const ScoringScheme& scheme, Coord end, Score score,
                   std::optional<BandSpec> band, const EngineConfig& config,
                   Border border = Border{BorderKind::Anchored, false},
                   WavefrontStats* stats = nullptr);

Coord locate_start(const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
                   Coord end, Score score, std::optional<BandSpec> band,
                   const EngineConfig& config);

}  // namespace longalign
