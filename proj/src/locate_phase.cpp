#include "longalign/locate_phase.hpp"

#include <algorithm>
#include <vector>

namespace longalign {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

BandSpec compute_band(Score score, std::int64_t n, std::int64_t m, const ScoringScheme& scheme) {
  if (n > m) std::swap(n, m);
  BandSpec band;
  band.n = n;
  band.m = m;
  band.t = floor_div(score, scheme.max_substitution_score());
  if (band.t > n) {
    band.degenerate = true;
    band.t = n;
  }
  band.m_prime = std::min(n + floor_div(n - band.t, scheme.gap_extend()), m);
  band.p = std::max<std::int64_t>(0, ceil_div(2 * n - band.t - band.m_prime, 2));
  band.diag_lo = -band.p;
  band.diag_hi = band.p + (m - n);
  return band;
}

BandSpec anchored_band(Score score, std::int64_t n, std::int64_t m, const ScoringScheme& scheme) {
  BandSpec band = compute_band(score, n, m, scheme);
  n = band.n;
  m = band.m;
  const std::int64_t max_sub = scheme.max_substitution_score();
  const std::int64_t ge = scheme.gap_extend();
  // An alignment with x aligned columns and g gap residues scores at most
  // max_sub * x - ge * g. Residues of one sequence spent in gaps bound how far
  // the path strays from the start diagonal on that side.
  const std::int64_t slack_n = std::max<std::int64_t>(0, max_sub * n - score);
  const std::int64_t slack_m = std::max<std::int64_t>(0, max_sub * m - score);
  const std::int64_t short_side = slack_n / (max_sub + ge);
  const std::int64_t long_side = std::min(slack_n / ge, slack_m / (max_sub + ge));
  band.diag_lo = -short_side;
  band.diag_hi = long_side;
  return band;
}

DiagonalBand to_diagonal_band(const BandSpec& band, std::int64_t row_len, std::int64_t col_len) {
  // index_in_longer - index_in_shorter; columns count as longer on ties.
  if (col_len >= row_len) return DiagonalBand{band.diag_lo, band.diag_hi};
  return DiagonalBand{-band.diag_hi, -band.diag_lo};
}

Coord anchored_search(std::span<const std::uint8_t> rows, std::span<const std::uint8_t> cols,
                      const ScoringScheme& scheme, Score target,
                      std::optional<DiagonalBand> band, Border border, kernel::Track track,
                      const EngineConfig& config, WavefrontStats* stats) {
  if (rows.empty() || cols.empty()) {
    throw AlignError(ErrorCode::StartNotFound, "anchored search over an empty region");
  }
  const auto grid = plan_grid(static_cast<std::int64_t>(rows.size()),
                              static_cast<std::int64_t>(cols.size()), config.block);
  PassSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.scheme = &scheme;
  spec.mode = kernel::Mode::Constrained;
  spec.track = track;
  spec.border = border;
  spec.band = band;
  const auto result = run_wavefront(grid, spec, config);
  if (stats != nullptr) *stats = result.stats;
  if (result.best.empty() || result.best.score != target) {
    throw AlignError(ErrorCode::StartNotFound,
                     "no cell attains the known score " + std::to_string(target) +
                         " (best " + std::to_string(result.best.empty() ? 0 : result.best.score) +
                         ")");
  }
  return Coord{result.best.i, result.best.j};
}

Coord locate_start(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                   const ScoringScheme& scheme, Coord end, Score score,
                   std::optional<BandSpec> band, const EngineConfig& config,
                   Border border, WavefrontStats* stats) {
  if (end.i < 0 || end.j < 0 || end.i > static_cast<std::int64_t>(seq1.size()) ||
      end.j > static_cast<std::int64_t>(seq2.size())) {
    throw AlignError(ErrorCode::InvalidArgument, "endpoint outside the sequences");
  }
  std::vector<std::uint8_t> rows(seq1.begin(), seq1.begin() + end.i);
  std::vector<std::uint8_t> cols(seq2.begin(), seq2.begin() + end.j);
  std::reverse(rows.begin(), rows.end());
  std::reverse(cols.begin(), cols.end());
  std::optional<DiagonalBand> diag;
  if (band) diag = to_diagonal_band(*band, end.i, end.j);
  const Coord hit = anchored_search(rows, cols, scheme, score, diag, border,
                                    kernel::Track::MaxLargest, config, stats);
  return Coord{end.i - hit.i, end.j - hit.j};
}

Coord locate_start(const Sequence& seq1, const Sequence& seq2, const ScoringScheme& scheme,
                   Coord end, Score score, std::optional<BandSpec> band,
                   const EngineConfig& config) {
  const auto a = scheme.alphabet().encode(seq1.residues);
  const auto b = scheme.alphabet().encode(seq2.residues);
  return locate_start(a, b, scheme, end, score, band, config);
}

}  // namespace longalign
