#include "longalign/split.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "longalign/locate_phase.hpp"

namespace longalign {
namespace {

void accumulate(WavefrontStats& into, const WavefrontStats& s) {
  into.blocks_total += s.blocks_total;
  into.executed += s.executed;
  into.pruned += s.pruned;
  into.out_of_band += s.out_of_band;
  into.cells += s.cells;
  into.max_observed_best = std::max(into.max_observed_best, s.max_observed_best);
}

PassSpec half_pass(std::span<const std::uint8_t> rows, std::span<const std::uint8_t> cols,
                   const ScoringScheme& scheme, kernel::Track track, const AlignOptions& options,
                   std::int64_t len1, std::int64_t len2) {
  PassSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.scheme = &scheme;
  spec.mode = kernel::Mode::Local;
  spec.track = track;
  spec.border = Border{BorderKind::Local, false};
  spec.prune = options.prune;
  // Alignments may continue into the other half, so the remaining-extent
  // bound is taken against the whole matrix.
  spec.prune_extent_rows = len1;
  spec.prune_extent_cols = len2;
  return spec;
}

}  // namespace

MidCase classify_midcase(const MidCombine& mc) {
  const std::int64_t up = mc.upper.score;
  const std::int64_t lo = mc.lower.score;
  const std::int64_t mid = mc.mid.score;
  if (up >= mid && up >= lo) return MidCase::Upper;
  if (mid >= lo) return MidCase::Midpoint;
  return MidCase::Lower;
}

AlignResult split_align(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                        const ScoringScheme& scheme, const AlignOptions& options, int parts) {
  if (parts != 2) {
    throw AlignError(ErrorCode::InvalidArgument,
                     "only a two-way split is supported (got " + std::to_string(parts) + ")");
  }
  const auto len1 = static_cast<std::int64_t>(seq1.size());
  const auto len2 = static_cast<std::int64_t>(seq2.size());
  if (len1 < 2 || len2 == 0) return align_single(seq1, seq2, scheme, options);

  const std::int64_t mid = len1 / 2;
  const auto top = seq1.first(static_cast<std::size_t>(mid));
  std::vector<std::uint8_t> rbottom(seq1.rbegin(), seq1.rend() - mid);
  std::vector<std::uint8_t> rcols(seq2.rbegin(), seq2.rend());

  EngineConfig up_cfg = options.engine;
  EngineConfig down_cfg = options.engine;
  up_cfg.workers = std::max(1, options.engine.workers / 2);
  down_cfg.workers = std::max(1, options.engine.workers - options.engine.workers / 2);

  const PassSpec up_spec =
      half_pass(top, seq2, scheme, kernel::Track::MaxSmallest, options, len1, len2);
  const PassSpec down_spec =
      half_pass(rbottom, rcols, scheme, kernel::Track::MaxLargest, options, len1, len2);

  std::optional<WavefrontResult> upper;
  std::optional<WavefrontResult> lower;
  std::exception_ptr lower_error;
  {
    std::jthread lower_thread([&] {
      try {
        lower.emplace(run_wavefront(plan_grid(len1 - mid, len2, down_cfg.block), down_spec, down_cfg));
      } catch (...) {
        lower_error = std::current_exception();
      }
    });
    upper.emplace(run_wavefront(plan_grid(mid, len2, up_cfg.block), up_spec, up_cfg));
  }
  if (lower_error) std::rethrow_exception(lower_error);

  AlignResult result;
  accumulate(result.stats.score_pass, upper->stats);
  accumulate(result.stats.score_pass, lower->stats);
  result.stats.upper_cells = upper->stats.cells;
  result.stats.lower_cells = lower->stats.cells;

  MidCombine mc;
  if (!upper->best.empty() && upper->best.score > 0) {
    mc.upper = HalfBest{upper->best.score, Coord{upper->best.i, upper->best.j}};
  }
  if (!lower->best.empty() && lower->best.score > 0) {
    mc.lower = HalfBest{lower->best.score, Coord{len1 - lower->best.i, len2 - lower->best.j}};
  }
  if (const auto choice = combine_middle(upper->last_row_h.span(), upper->last_row_f.span(),
                                         lower->last_row_h.span(), lower->last_row_f.span(),
                                         scheme.gap_open())) {
    mc.mid = MidPoint{choice->score, Coord{mid, choice->column}, choice->gap_join};
  }
  const MidCase which = classify_midcase(mc);
  result.stats.split_case = which;

  const ReconstructOptions ropt{options.leaf_limit, options.band, options.concurrent_leaves};
  const EngineConfig& cfg = options.engine;

  if (which == MidCase::Upper) {
    if (mc.upper.score <= 0) return result;
    const Coord end = mc.upper.end;
    const auto band = search_band(options, mc.upper.score, end.i, end.j, scheme);
    const Coord start = locate_start(seq1, seq2, scheme, end, mc.upper.score, band, cfg,
                                     Border{BorderKind::Anchored, false}, &result.stats.locate_pass);
    result.summary = AlignmentSummary{mc.upper.score, start, end};
    result.path = reconstruct(seq1, seq2, scheme, result.summary, ropt, cfg,
                              &result.stats.reconstruct);
    return result;
  }

  if (which == MidCase::Lower) {
    const Coord start = mc.lower.end;
    const auto band = search_band(options, mc.lower.score, len1 - start.i, len2 - start.j, scheme);
    const Coord hit = anchored_search(
        seq1.subspan(static_cast<std::size_t>(start.i)), seq2.subspan(static_cast<std::size_t>(start.j)),
        scheme, mc.lower.score,
        band ? std::optional(to_diagonal_band(*band, len1 - start.i, len2 - start.j)) : std::nullopt,
        Border{BorderKind::Anchored, false}, kernel::Track::MaxSmallest, cfg,
        &result.stats.locate_pass);
    result.summary = AlignmentSummary{mc.lower.score, start, Coord{start.i + hit.i, start.j + hit.j}};
    result.path = reconstruct(seq1, seq2, scheme, result.summary, ropt, cfg,
                              &result.stats.reconstruct);
    return result;
  }

  // Midpoint: the optimum crosses row `mid` at column mc.mid.at.j, either
  // through H on both sides or through one vertical gap spanning the row.
  // Either half may begin or end with a gap at the crossing, so the searches
  // from the crossing use global borders rather than anchored ones.
  if (mc.mid.score <= 0) return result;
  const Coord m = mc.mid.at;
  const bool gap = mc.mid.gap_join;
  const std::size_t fwd = static_cast<std::size_t>(m.j);
  const std::size_t rev = static_cast<std::size_t>(len2 - m.j);
  const Score su = gap ? upper->last_row_f[fwd] : upper->last_row_h[fwd];
  const Score sd = gap ? lower->last_row_f[rev] : lower->last_row_h[rev];
  upper.reset();
  lower.reset();

  Coord start = m;
  if (gap || su > 0) {
    const auto band = search_band(options, su, m.i, m.j, scheme);
    start = locate_start(seq1, seq2, scheme, m, su, band, cfg, Border{BorderKind::Global, gap},
                         &result.stats.locate_pass);
  }
  Coord end = m;
  if (gap || sd > 0) {
    const auto band = search_band(options, sd, len1 - m.i, len2 - m.j, scheme);
    WavefrontStats ls;
    const Coord hit = anchored_search(
        seq1.subspan(static_cast<std::size_t>(m.i)), seq2.subspan(static_cast<std::size_t>(m.j)),
        scheme, sd,
        band ? std::optional(to_diagonal_band(*band, len1 - m.i, len2 - m.j)) : std::nullopt,
        Border{BorderKind::Global, gap}, kernel::Track::MaxSmallest, cfg, &ls);
    accumulate(result.stats.locate_pass, ls);
    end = Coord{m.i + hit.i, m.j + hit.j};
  }

  ReconstructStats us, ds;
  const AlignmentPath up_path =
      reconstruct_subproblem(seq1, seq2, Subproblem{start, m, su, false, gap}, scheme, ropt, cfg, &us);
  const AlignmentPath down_path =
      reconstruct_subproblem(seq1, seq2, Subproblem{m, end, sd, gap, false}, scheme, ropt, cfg, &ds);
  const AlignmentPath halves[] = {up_path, down_path};
  result.summary = AlignmentSummary{static_cast<Score>(mc.mid.score), start, end};
  result.path = join_paths(halves);
  result.stats.reconstruct = ReconstructStats{us.splits + ds.splits, us.leaves + ds.leaves,
                                              us.pass_cells + ds.pass_cells,
                                              std::max(us.max_leaf_cells, ds.max_leaf_cells)};
  return result;
}

}  // namespace longalign
