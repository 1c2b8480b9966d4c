#include <algorithm>

#include "longalign/kernel.hpp"

namespace longalign::kernel {

bool better(Track track, const Best& a, const Best& b) {
  if (a.empty()) return false;
  if (b.empty()) return true;
  if (a.score != b.score) return a.score > b.score;
  const bool smaller = a.i != b.i ? a.i < b.i : a.j < b.j;
  const bool same = a.i == b.i && a.j == b.j;
  if (same) return false;
  return track == Track::MaxLargest ? !smaller : smaller;
}

void scalar_rows(const Params& p, BlockIo& io, std::size_t row_begin, std::size_t row_end,
                 Score corner, Best& best) {
  const std::size_t width = io.cols.size();
  const Score goe = p.gap_open + p.gap_extend;
  const Score ge = p.gap_extend;
  const bool local = p.mode == Mode::Local;
  const auto k = static_cast<std::size_t>(p.alphabet_size);
  Score* const h_row = io.h_row.data();
  Score* const f_row = io.f_row.data();
  const std::uint8_t* const cols = io.cols.data();

  Score diag_corner = corner;
  for (std::size_t r = row_begin; r < row_end; ++r) {
    const Score* sub = p.table.data() + io.rows[r] * k;
    Score h_left = io.h_col[r];
    Score e = io.e_col[r];
    Score h_diag = diag_corner;
    diag_corner = h_left;

    Score row_best = std::numeric_limits<Score>::min();
    std::int64_t row_best_c = -1;
    for (std::size_t c = 0; c < width; ++c) {
      const Score h_up = h_row[c];
      Score f = std::max(h_up - goe, f_row[c] - ge);
      e = std::max(h_left - goe, e - ge);
      if (!local) {
        f = std::max(f, kNegInf);
        e = std::max(e, kNegInf);
      }
      Score h = std::max(h_diag + sub[cols[c]], std::max(e, f));
      if (local) h = std::max(h, 0);
      h_diag = h_up;
      h_row[c] = h;
      f_row[c] = f;
      h_left = h;
      if (p.track == Track::MaxSmallest) {
        if (h > row_best) {
          row_best = h;
          row_best_c = static_cast<std::int64_t>(c);
        }
      } else if (p.track == Track::MaxLargest) {
        if (h >= row_best) {
          row_best = h;
          row_best_c = static_cast<std::int64_t>(c);
        }
      }
    }
    io.h_col[r] = h_left;
    io.e_col[r] = e;
    if (row_best_c >= 0) {
      const Best cand{row_best, io.row0 + static_cast<std::int64_t>(r) + 1,
                      io.col0 + row_best_c + 1};
      if (better(p.track, cand, best)) best = cand;
    }
  }
}

void run_block_scalar(const Params& params, BlockIo& io, Best& best) {
  scalar_rows(params, io, 0, io.rows.size(), io.corner, best);
}

}  // namespace longalign::kernel
