#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "longalign/core.hpp"
#include "longalign/kernel.hpp"
#include "longalign/memstat.hpp"
#include "longalign/prune.hpp"

namespace longalign {

struct BlockDims {
  std::int64_t rows = 512;
  std::int64_t cols = 512;
};

struct EngineConfig {
  int workers = 1;
  BlockDims block;
  kernel::Isa isa = kernel::Isa::Auto;
};

/// Tiling of a len1 x len2 cell matrix into blocks; the last block row and
/// column may be ragged.
struct BlockGrid {
  std::int64_t len1 = 0;
  std::int64_t len2 = 0;
  std::int64_t block_rows = 1;
  std::int64_t block_cols = 1;
  std::int64_t grid_rows = 0;
  std::int64_t grid_cols = 0;

  std::int64_t diagonals() const { return grid_rows == 0 ? 0 : grid_rows + grid_cols - 1; }
  std::int64_t block_count() const { return grid_rows * grid_cols; }
  std::int64_t row_begin(std::int64_t bi) const { return bi * block_rows; }
  std::int64_t row_end(std::int64_t bi) const { return std::min(len1, (bi + 1) * block_rows); }
  std::int64_t col_begin(std::int64_t bj) const { return bj * block_cols; }
  std::int64_t col_end(std::int64_t bj) const { return std::min(len2, (bj + 1) * block_cols); }
};

/// Block dims are clamped to [1, sequence length].
BlockGrid plan_grid(std::int64_t len1, std::int64_t len2, BlockDims hint = {});

/// Runs `block_fn(bi, bj)` for every block, one anti-diagonal at a time with a
/// barrier between anti-diagonals. `on_diagonal_done(d)` runs on a single
/// thread after all blocks of diagonal d finished and before d + 1 starts.
/// A throwing block function aborts the run; the first exception is rethrown
/// as WorkerPanic once every worker has left the barrier.
void schedule_wavefront(const BlockGrid& grid, int workers,
                        const std::function<void(std::int64_t, std::int64_t)>& block_fn,
                        const std::function<void(std::int64_t)>& on_diagonal_done = {});

enum class BorderKind : std::uint8_t {
  Local,     // every border cell scores 0
  Global,    // affine gap borders from the origin
  Anchored,  // origin 0, all other border cells unreachable
};

struct Border {
  BorderKind kind = BorderKind::Local;
  // Forces the first operation to be a DELETE (vertical gap) out of the
  // origin. Only meaningful for Global and Anchored borders.
  bool begins_with_vertical_gap = false;
};

/// Admissible interval of j - i; blocks whose cells miss it are skipped.
struct DiagonalBand {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

enum class BlockFate : std::uint8_t { Executed, Pruned, OutOfBand };

struct PassSpec {
  std::span<const std::uint8_t> rows;
  std::span<const std::uint8_t> cols;
  const ScoringScheme* scheme = nullptr;
  kernel::Mode mode = kernel::Mode::Local;
  kernel::Track track = kernel::Track::None;
  Border border;
  std::optional<DiagonalBand> band;
  // Enables block pruning (local mode only). Extents default to the pass
  // dimensions when zero.
  bool prune = false;
  std::int64_t prune_extent_rows = 0;
  std::int64_t prune_extent_cols = 0;
  bool record_fates = false;
  bool record_trace = false;
};

struct WavefrontStats {
  std::int64_t blocks_total = 0;
  std::int64_t executed = 0;
  std::int64_t pruned = 0;
  std::int64_t out_of_band = 0;
  std::int64_t cells = 0;
  // Largest best-so-far value any block saw when deciding whether to prune.
  Score max_observed_best = 0;

  double pruned_fraction() const {
    return blocks_total == 0 ? 0.0 : static_cast<double>(pruned) / static_cast<double>(blocks_total);
  }
};

struct BlockEvent {
  std::int64_t bi = 0;
  std::int64_t bj = 0;
  std::int64_t started = 0;
  std::int64_t finished = 0;
  BlockFate fate = BlockFate::Executed;
};

struct WavefrontResult {
  kernel::Best best;
  // H and F of the final row, indexed by column 0..len2 (column 0 holds the
  // border value).
  memstat::TrackedBuffer<Score> last_row_h;
  memstat::TrackedBuffer<Score> last_row_f;
  WavefrontStats stats;
  std::vector<BlockFate> fates;    // grid_rows * grid_cols when recorded
  std::vector<BlockEvent> trace;   // one entry per block when recorded
};

/// One DP pass over the grid using the selected block kernel. Boundary state
/// is one row buffer, one column buffer and one corner per block row, so
/// memory is linear in len1 + len2.
WavefrontResult run_wavefront(const BlockGrid& grid, const PassSpec& spec,
                              const EngineConfig& config);

/// Border values of the pass matrix at (i, 0) for H and F.
Score border_h_left(const Border& border, const ScoringScheme& scheme, std::int64_t i);
Score border_f_left(const Border& border, const ScoringScheme& scheme, std::int64_t i);

}  // namespace longalign
