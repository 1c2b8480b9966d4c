#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "longalign/core.hpp"
#include "longalign/prune.hpp"
#include "longalign/wavefront.hpp"

namespace longalign {

struct ScoreEnd {
  Score score = 0;
  Coord end;
  WavefrontStats stats;
  std::vector<BlockFate> fates;  // filled when requested
  BlockGrid grid;
};

/// Forward local pass: optimal score and the lexicographically smallest
/// endpoint attaining it. Score 0 reports end (0, 0).
ScoreEnd best_local(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                    const ScoringScheme& scheme, const EngineConfig& config, bool prune,
                    bool record_fates = false);

ScoreEnd best_local(const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
                    const EngineConfig& config, bool prune);

/// Text rendering of block fates, one character per block: '#' executed,
/// '.' pruned, ' ' outside the band.
std::string render_fates(const BlockGrid& grid, const std::vector<BlockFate>& fates);

}  // namespace longalign
