#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "longalign/core.hpp"
#include "longalign/locate_phase.hpp"
#include "longalign/reconstruct.hpp"
#include "longalign/wavefront.hpp"

namespace longalign {

enum class MidCase : std::uint8_t { Upper, Lower, Midpoint };

const char* to_string(MidCase c);

struct AlignOptions {
  EngineConfig engine;
  bool prune = true;
  bool band = true;
  int split = 1;  // 1 or 2
  std::int64_t leaf_limit = 128 * 128;
  bool concurrent_leaves = true;
};

struct AlignStats {
  WavefrontStats score_pass;          // phase 1 (both halves summed when split)
  WavefrontStats locate_pass;
  ReconstructStats reconstruct;
  std::optional<MidCase> split_case;  // set when split = 2
  std::int64_t upper_cells = 0;       // split: cells computed per half
  std::int64_t lower_cells = 0;
};

struct AlignResult {
  AlignmentSummary summary;
  AlignmentPath path;
  AlignStats stats;
};

/// Exact local alignment: score and end point, start point, then the path.
AlignResult align(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                  const ScoringScheme& scheme, const AlignOptions& options = {});

AlignResult align(const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
                  const AlignOptions& options = {});

/// The single-pipeline path, ignoring options.split.
AlignResult align_single(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                         const ScoringScheme& scheme, const AlignOptions& options);

/// Band used when searching from an anchor over an n x m region, if enabled.
std::optional<BandSpec> search_band(const AlignOptions& options, Score score, std::int64_t rows,
                                    std::int64_t cols, const ScoringScheme& scheme);

}  // namespace longalign
