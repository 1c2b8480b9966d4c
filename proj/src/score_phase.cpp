#include "longalign/score_phase.hpp"

namespace longalign {

ScoreEnd best_local(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                    const ScoringScheme& scheme, const EngineConfig& config, bool prune,
                    bool record_fates) {
  ScoreEnd out;
  if (seq1.empty() || seq2.empty()) return out;
  out.grid = plan_grid(static_cast<std::int64_t>(seq1.size()),
                       static_cast<std::int64_t>(seq2.size()), config.block);
  PassSpec spec;
  spec.rows = seq1;
  spec.cols = seq2;
  spec.scheme = &scheme;
  spec.mode = kernel::Mode::Local;
  spec.track = kernel::Track::MaxSmallest;
  spec.border = Border{BorderKind::Local, false};
  spec.prune = prune;
  spec.record_fates = record_fates;
  auto result = run_wavefront(out.grid, spec, config);
  out.stats = result.stats;
  out.fates = std::move(result.fates);
  if (!result.best.empty() && result.best.score > 0) {
    out.score = result.best.score;
    out.end = Coord{result.best.i, result.best.j};
  }
  return out;
}

ScoreEnd best_local(const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
                    const EngineConfig& config, bool prune) {
  const auto a = scheme.alphabet().encode(seq1.residues);
  const auto b = scheme.alphabet().encode(seq2.residues);
  return best_local(a, b, scheme, config, prune);
}

std::string render_fates(const BlockGrid& grid, const std::vector<BlockFate>& fates) {
  std::string out;
  if (fates.size() != static_cast<std::size_t>(grid.block_count())) return out;
  for (std::int64_t bi = 0; bi < grid.grid_rows; ++bi) {
    for (std::int64_t bj = 0; bj < grid.grid_cols; ++bj) {
      switch (fates[static_cast<std::size_t>(bi * grid.grid_cols + bj)]) {
        case BlockFate::Executed: out += '#'; break;
        case BlockFate::Pruned: out += '.'; break;
        case BlockFate::OutOfBand: out += ' '; break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace longalign
