#pragma once

#include <cstdint>
#include <span>

#include "longalign/pipeline.hpp"

namespace longalign {

struct HalfBest {
  Score score = 0;
  Coord end;  // forward coordinates; for the lower half this is its start point
};

struct MidPoint {
  std::int64_t score = 0;
  Coord at;
  bool gap_join = false;
};

struct MidCombine {
  HalfBest upper;
  HalfBest lower;
  MidPoint mid;
};

/// Argmax of the three scores; ties go upper, then midpoint, then lower.
MidCase classify_midcase(const MidCombine& mc);

/// Two-way split at row len1 / 2: forward local pass over the upper half and
/// reverse local pass over the lower half run concurrently, then the case is
/// resolved with anchored searches and the halves are reconstructed.
AlignResult split_align(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                        const ScoringScheme& scheme, const AlignOptions& options, int parts = 2);

}  // namespace longalign
