#pragma once

#include <cstdint>
#include <span>

#include "longalign/core.hpp"

namespace longalign::kernel {

// Block kernels: a block covers DP rows row0+1 .. row0+height and columns
// col0+1 .. col0+width. Boundary spans are updated in place: the row buffers
// enter holding row row0 and leave holding row row0+height, the column
// buffers enter holding column col0 and leave holding column col0+width.
//
// The scalar kernel is the reference; the AVX2 kernel must produce
// bit-identical buffers and tracking results.

enum class Mode : std::uint8_t {
  Local,        // H clamped at zero
  Constrained,  // no clamp; E and F floored at kNegInf
};

enum class Track : std::uint8_t {
  None,
  MaxSmallest,  // maximum H, smallest (i, j) among ties
  MaxLargest,   // maximum H, largest (i, j) among ties
};

enum class Isa : std::uint8_t { Auto, Scalar, Avx2 };

const char* to_string(Isa isa);

struct Params {
  std::span<const Score> table;  // row-major alphabet_size^2
  int alphabet_size = 0;
  Score gap_open = 0;
  Score gap_extend = 1;
  Mode mode = Mode::Local;
  Track track = Track::None;
};

struct BlockIo {
  std::span<const std::uint8_t> rows;
  std::span<const std::uint8_t> cols;
  Score corner = 0;  // H(row0, col0)
  std::span<Score> h_row, f_row;
  std::span<Score> h_col, e_col;
  std::int64_t row0 = 0;
  std::int64_t col0 = 0;
};

struct Best {
  Score score = std::numeric_limits<Score>::min();
  std::int64_t i = -1;
  std::int64_t j = -1;

  bool empty() const { return i < 0; }
  friend bool operator==(const Best&, const Best&) = default;
};

/// Total order used to merge tracking results: true if `a` should replace `b`.
bool better(Track track, const Best& a, const Best& b);

void run_block_scalar(const Params& params, BlockIo& io, Best& best);
#if defined(LONGALIGN_HAVE_AVX2)
void run_block_avx2(const Params& params, BlockIo& io, Best& best);
#endif

/// Scalar row loop shared by both kernels for rows [row_begin, row_end).
/// `corner` is H(row0 + row_begin, col0).
void scalar_rows(const Params& params, BlockIo& io, std::size_t row_begin,
                 std::size_t row_end, Score corner, Best& best);

using BlockFn = void (*)(const Params&, BlockIo&, Best&);

bool avx2_available();
/// Resolves Auto to the best available kernel; honours LONGALIGN_ISA=scalar.
Isa resolve(Isa requested);
BlockFn select(Isa requested);

}  // namespace longalign::kernel
