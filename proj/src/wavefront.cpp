#include "longalign/wavefront.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <exception>
#include <mutex>
#include <thread>

namespace longalign {

bool prune_verdict(const PruneContext& ctx, Score block_input_max, Coord block_origin) {
  const std::int64_t remaining =
      std::min(ctx.extent_rows - block_origin.i, ctx.extent_cols - block_origin.j);
  const std::int64_t bound = static_cast<std::int64_t>(std::max<Score>(block_input_max, 0)) +
                             static_cast<std::int64_t>(ctx.max_substitution_score) *
                                 std::max<std::int64_t>(remaining, 0);
  return bound < ctx.best_so_far;
}

BlockGrid plan_grid(std::int64_t len1, std::int64_t len2, BlockDims hint) {
  BlockGrid g;
  g.len1 = len1;
  g.len2 = len2;
  g.block_rows = std::clamp<std::int64_t>(hint.rows, 1, std::max<std::int64_t>(len1, 1));
  g.block_cols = std::clamp<std::int64_t>(hint.cols, 1, std::max<std::int64_t>(len2, 1));
  if (len1 > 0 && len2 > 0) {
    g.grid_rows = (len1 + g.block_rows - 1) / g.block_rows;
    g.grid_cols = (len2 + g.block_cols - 1) / g.block_cols;
  }
  return g;
}

namespace {

[[noreturn]] void rethrow_as_panic(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const std::exception& ex) {
    throw AlignError(ErrorCode::WorkerPanic, std::string("block kernel failed: ") + ex.what());
  } catch (...) {
    throw AlignError(ErrorCode::WorkerPanic, "block kernel failed");
  }
}

}  // namespace

void schedule_wavefront(const BlockGrid& grid, int workers,
                        const std::function<void(std::int64_t, std::int64_t)>& block_fn,
                        const std::function<void(std::int64_t)>& on_diagonal_done) {
  const std::int64_t diagonals = grid.diagonals();
  if (diagonals == 0) return;
  const auto first_row = [&](std::int64_t d) { return std::max<std::int64_t>(0, d - (grid.grid_cols - 1)); };
  const auto last_row = [&](std::int64_t d) { return std::min<std::int64_t>(d, grid.grid_rows - 1); };

  const std::int64_t widest = std::min(grid.grid_rows, grid.grid_cols);
  const int threads = static_cast<int>(std::clamp<std::int64_t>(workers, 1, widest));

  if (threads == 1) {
    try {
      for (std::int64_t d = 0; d < diagonals; ++d) {
        for (std::int64_t bi = first_row(d); bi <= last_row(d); ++bi) block_fn(bi, d - bi);
        if (on_diagonal_done) on_diagonal_done(d);
      }
    } catch (...) {
      rethrow_as_panic(std::current_exception());
    }
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> abort{false};
  std::int64_t diag = 0;
  std::int64_t diag_last = last_row(0);
  std::exception_ptr failure;
  std::mutex failure_mu;

  const auto record_failure = [&](std::exception_ptr ep) {
    std::lock_guard lock(failure_mu);
    if (!failure) failure = ep;
    abort.store(true, std::memory_order_relaxed);
  };

  const auto advance = [&]() noexcept {
    if (!abort.load(std::memory_order_relaxed) && on_diagonal_done) {
      try {
        on_diagonal_done(diag);
      } catch (...) {
        record_failure(std::current_exception());
      }
    }
    // Every worker leaves through the barrier, so stopping is decided here.
    if (abort.load(std::memory_order_relaxed)) {
      diag = diagonals;
      return;
    }
    ++diag;
    if (diag < diagonals) {
      next.store(first_row(diag), std::memory_order_relaxed);
      diag_last = last_row(diag);
    }
  };
  std::barrier sync(threads, advance);

  const auto work = [&]() {
    while (diag < diagonals) {
      const std::int64_t d = diag;
      for (std::int64_t bi = next.fetch_add(1); bi <= diag_last; bi = next.fetch_add(1)) {
        if (abort.load(std::memory_order_relaxed)) break;
        try {
          block_fn(bi, d - bi);
        } catch (...) {
          record_failure(std::current_exception());
        }
      }
      sync.arrive_and_wait();
    }
  };

  next.store(first_row(0));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads - 1));
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) rethrow_as_panic(failure);
}

Score border_h_left(const Border& border, const ScoringScheme& scheme, std::int64_t i) {
  const auto gap = [&](std::int64_t len) {
    return static_cast<Score>(std::max<std::int64_t>(
        kNegInf, -(static_cast<std::int64_t>(scheme.gap_open()) + len * scheme.gap_extend())));
  };
  switch (border.kind) {
    case BorderKind::Local: return 0;
    case BorderKind::Global:
      if (i == 0) return border.begins_with_vertical_gap ? kNegInf : 0;
      return gap(i);
    case BorderKind::Anchored:
      if (i == 0) return border.begins_with_vertical_gap ? kNegInf : 0;
      return border.begins_with_vertical_gap ? gap(i) : kNegInf;
  }
  return kNegInf;
}

Score border_f_left(const Border& border, const ScoringScheme& scheme, std::int64_t i) {
  if (i == 0 || border.kind == BorderKind::Local) return kNegInf;
  if (border.kind == BorderKind::Anchored && !border.begins_with_vertical_gap) return kNegInf;
  return border_h_left(border, scheme, i);
}

namespace {

Score border_h_top(const Border& border, const ScoringScheme& scheme, std::int64_t j) {
  if (j == 0) return border_h_left(border, scheme, 0);
  switch (border.kind) {
    case BorderKind::Local: return 0;
    case BorderKind::Global:
      if (border.begins_with_vertical_gap) return kNegInf;
      return static_cast<Score>(std::max<std::int64_t>(
          kNegInf, -(static_cast<std::int64_t>(scheme.gap_open()) + j * scheme.gap_extend())));
    case BorderKind::Anchored: return kNegInf;
  }
  return kNegInf;
}

struct Slot {
  kernel::Best best;
  BlockFate fate = BlockFate::Executed;
  std::int64_t cells = 0;
  Score seen_best = 0;
};

}  // namespace

WavefrontResult run_wavefront(const BlockGrid& grid, const PassSpec& spec,
                              const EngineConfig& config) {
  if (spec.scheme == nullptr) {
    throw AlignError(ErrorCode::InvalidArgument, "pass has no scoring scheme");
  }
  const ScoringScheme& scheme = *spec.scheme;
  const auto len1 = static_cast<std::int64_t>(spec.rows.size());
  const auto len2 = static_cast<std::int64_t>(spec.cols.size());
  if (grid.len1 != len1 || grid.len2 != len2) {
    throw AlignError(ErrorCode::InvalidArgument, "grid does not match the pass dimensions");
  }
  if (spec.prune && spec.mode != kernel::Mode::Local) {
    throw AlignError(ErrorCode::InvalidArgument, "pruning requires a local-mode pass");
  }

  using memstat::Pool;
  using memstat::TrackedBuffer;
  WavefrontResult result;
  result.last_row_h = TrackedBuffer<Score>(Pool::Boundary, static_cast<std::size_t>(len2 + 1));
  result.last_row_f = TrackedBuffer<Score>(Pool::Boundary, static_cast<std::size_t>(len2 + 1), kNegInf);
  TrackedBuffer<Score> col_h(Pool::Boundary, static_cast<std::size_t>(len1 + 1));
  TrackedBuffer<Score> col_e(Pool::Boundary, static_cast<std::size_t>(len1 + 1), kNegInf);
  TrackedBuffer<Score> corners(Pool::Boundary, static_cast<std::size_t>(grid.grid_rows));

  auto& row_h = result.last_row_h;
  auto& row_f = result.last_row_f;
  for (std::int64_t j = 0; j <= len2; ++j) row_h[j] = border_h_top(spec.border, scheme, j);
  for (std::int64_t i = 0; i <= len1; ++i) col_h[i] = border_h_left(spec.border, scheme, i);
  for (std::int64_t bi = 0; bi < grid.grid_rows; ++bi) corners[bi] = col_h[grid.row_begin(bi)];

  const bool local = spec.mode == kernel::Mode::Local;
  const Score fill_h = local ? 0 : kNegInf;
  const kernel::Params params{scheme.table(),
                              static_cast<int>(scheme.alphabet().size()),
                              scheme.gap_open(),
                              scheme.gap_extend(),
                              spec.mode,
                              spec.track};
  const kernel::BlockFn block_kernel = kernel::select(config.isa);

  const PruneContext prune_base{0, scheme.max_substitution_score(),
                                spec.prune_extent_rows > 0 ? spec.prune_extent_rows : len1,
                                spec.prune_extent_cols > 0 ? spec.prune_extent_cols : len2};
  Score published_best = 0;

  std::vector<Slot> slots(static_cast<std::size_t>(grid.grid_rows));
  if (spec.record_fates) result.fates.assign(static_cast<std::size_t>(grid.block_count()), BlockFate::Executed);
  if (spec.record_trace) result.trace.resize(static_cast<std::size_t>(grid.block_count()));
  std::atomic<std::int64_t> clock{0};

  const auto block_fn = [&](std::int64_t bi, std::int64_t bj) {
    const std::int64_t started = spec.record_trace ? clock.fetch_add(1) : 0;
    const std::int64_t r0 = grid.row_begin(bi), r1 = grid.row_end(bi);
    const std::int64_t c0 = grid.col_begin(bj), c1 = grid.col_end(bj);
    const auto height = static_cast<std::size_t>(r1 - r0);
    const auto width = static_cast<std::size_t>(c1 - c0);
    Slot& slot = slots[static_cast<std::size_t>(bi)];
    slot = Slot{};

    const Score corner_in = corners[bi];
    corners[bi] = row_h[c1];

    auto h_row = row_h.span().subspan(static_cast<std::size_t>(c0 + 1), width);
    auto f_row = row_f.span().subspan(static_cast<std::size_t>(c0 + 1), width);
    auto h_col = col_h.span().subspan(static_cast<std::size_t>(r0 + 1), height);
    auto e_col = col_e.span().subspan(static_cast<std::size_t>(r0 + 1), height);

    if (spec.band) {
      const std::int64_t lo = (c0 + 1) - r1;
      const std::int64_t hi = c1 - (r0 + 1);
      if (hi < spec.band->lo || lo > spec.band->hi) slot.fate = BlockFate::OutOfBand;
    }
    if (slot.fate == BlockFate::Executed && spec.prune) {
      Score input_max = corner_in;
      for (Score v : h_row) input_max = std::max(input_max, v);
      for (Score v : h_col) input_max = std::max(input_max, v);
      PruneContext ctx = prune_base;
      ctx.best_so_far = published_best;
      slot.seen_best = published_best;
      if (prune_verdict(ctx, input_max, Coord{r0, c0})) slot.fate = BlockFate::Pruned;
    }

    if (slot.fate == BlockFate::Executed) {
      kernel::BlockIo io{spec.rows.subspan(static_cast<std::size_t>(r0), height),
                         spec.cols.subspan(static_cast<std::size_t>(c0), width),
                         corner_in,
                         h_row,
                         f_row,
                         h_col,
                         e_col,
                         r0,
                         c0};
      block_kernel(params, io, slot.best);
      slot.cells = static_cast<std::int64_t>(height * width);
    } else {
      std::fill(h_row.begin(), h_row.end(), fill_h);
      std::fill(f_row.begin(), f_row.end(), kNegInf);
      std::fill(h_col.begin(), h_col.end(), fill_h);
      std::fill(e_col.begin(), e_col.end(), kNegInf);
    }

    const auto id = static_cast<std::size_t>(bi * grid.grid_cols + bj);
    if (spec.record_fates) result.fates[id] = slot.fate;
    if (spec.record_trace) {
      result.trace[id] = BlockEvent{bi, bj, started, clock.fetch_add(1), slot.fate};
    }
  };

  const auto on_done = [&](std::int64_t d) {
    const std::int64_t lo = std::max<std::int64_t>(0, d - (grid.grid_cols - 1));
    const std::int64_t hi = std::min<std::int64_t>(d, grid.grid_rows - 1);
    for (std::int64_t bi = lo; bi <= hi; ++bi) {
      const Slot& s = slots[static_cast<std::size_t>(bi)];
      if (kernel::better(spec.track, s.best, result.best)) result.best = s.best;
      switch (s.fate) {
        case BlockFate::Executed: ++result.stats.executed; break;
        case BlockFate::Pruned: ++result.stats.pruned; break;
        case BlockFate::OutOfBand: ++result.stats.out_of_band; break;
      }
      result.stats.cells += s.cells;
      result.stats.max_observed_best = std::max(result.stats.max_observed_best, s.seen_best);
    }
    if (local && !result.best.empty()) published_best = std::max(published_best, result.best.score);
  };

  schedule_wavefront(grid, config.workers, block_fn, on_done);

  result.stats.blocks_total = grid.block_count();
  row_h[0] = border_h_left(spec.border, scheme, len1);
  row_f[0] = border_f_left(spec.border, scheme, len1);
  if (len1 == 0) {
    for (std::int64_t j = 1; j <= len2; ++j) row_f[j] = kNegInf;
  }
  return result;
}

}  // namespace longalign
