#include <immintrin.h>

#include <algorithm>

#include "longalign/kernel.hpp"

namespace longalign::kernel {
namespace {

constexpr int kLanes = 8;

// Lane k <- lane k-1, lane 0 <- x.
inline __m256i shift_in(__m256i v, __m256i rotate_idx, Score x) {
  const __m256i rotated = _mm256_permutevar8x32_epi32(v, rotate_idx);
  return _mm256_blend_epi32(rotated, _mm256_set1_epi32(x), 0x01);
}

// One strip of eight rows swept as a skewed wavefront: at step s lane k
// computes column s - k, so up and diagonal neighbours come from lane k - 1
// one and two steps earlier.
template <Mode kMode, Track kTrack>
void strip(const Params& p, BlockIo& io, std::size_t r0, Score corner, Best& best) {
  const auto width = static_cast<std::int64_t>(io.cols.size());
  const int k = p.alphabet_size;
  const Score* table = p.table.data();
  Score* const h_row = io.h_row.data();
  Score* const f_row = io.f_row.data();
  const std::uint8_t* const cols = io.cols.data();

  const __m256i rotate_idx = _mm256_setr_epi32(7, 0, 1, 2, 3, 4, 5, 6);
  const __m256i lane_ids = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i v_goe = _mm256_set1_epi32(p.gap_open + p.gap_extend);
  const __m256i v_ge = _mm256_set1_epi32(p.gap_extend);
  const __m256i v_neg = _mm256_set1_epi32(kNegInf);
  const __m256i v_zero = _mm256_setzero_si256();
  const __m256i v_width = _mm256_set1_epi32(static_cast<int>(width));
  const __m256i v_minus1 = _mm256_set1_epi32(-1);

  alignas(32) std::int32_t row_off[kLanes];
  for (int l = 0; l < kLanes; ++l) row_off[l] = io.rows[r0 + l] * k;
  const __m256i v_row_off = _mm256_load_si256(reinterpret_cast<const __m256i*>(row_off));

  __m256i h_cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(io.h_col.data() + r0));
  __m256i e_cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(io.e_col.data() + r0));
  __m256i f_cur = v_neg;
  __m256i up_prev = shift_in(h_cur, rotate_idx, corner);
  __m256i col_res = v_zero;

  __m256i best_v = _mm256_set1_epi32(std::numeric_limits<Score>::min());
  __m256i best_c = v_minus1;

  const std::int64_t steps = width + kLanes - 1;
  for (std::int64_t s = 0; s < steps; ++s) {
    Score top_h = kNegInf;
    Score top_f = kNegInf;
    int res = 0;
    if (s < width) {
      top_h = h_row[s];
      top_f = f_row[s];
      res = cols[s];
    }
    const __m256i up_h = shift_in(h_cur, rotate_idx, top_h);
    const __m256i up_f = shift_in(f_cur, rotate_idx, top_f);
    col_res = shift_in(col_res, rotate_idx, res);
    const __m256i sub =
        _mm256_i32gather_epi32(table, _mm256_add_epi32(v_row_off, col_res), 4);

    __m256i f = _mm256_max_epi32(_mm256_sub_epi32(up_h, v_goe), _mm256_sub_epi32(up_f, v_ge));
    __m256i e = _mm256_max_epi32(_mm256_sub_epi32(h_cur, v_goe), _mm256_sub_epi32(e_cur, v_ge));
    if constexpr (kMode == Mode::Constrained) {
      f = _mm256_max_epi32(f, v_neg);
      e = _mm256_max_epi32(e, v_neg);
    }
    __m256i h = _mm256_max_epi32(_mm256_add_epi32(up_prev, sub), _mm256_max_epi32(e, f));
    if constexpr (kMode == Mode::Local) h = _mm256_max_epi32(h, v_zero);
    up_prev = up_h;

    const __m256i c_vec = _mm256_sub_epi32(_mm256_set1_epi32(static_cast<int>(s)), lane_ids);
    if (s >= kLanes - 1 && s < width) {
      h_cur = h;
      e_cur = e;
      f_cur = f;
      if constexpr (kTrack == Track::MaxSmallest) {
        const __m256i gt = _mm256_cmpgt_epi32(h, best_v);
        best_v = _mm256_blendv_epi8(best_v, h, gt);
        best_c = _mm256_blendv_epi8(best_c, c_vec, gt);
      } else if constexpr (kTrack == Track::MaxLargest) {
        const __m256i lt = _mm256_cmpgt_epi32(best_v, h);
        best_v = _mm256_blendv_epi8(h, best_v, lt);
        best_c = _mm256_blendv_epi8(c_vec, best_c, lt);
      }
    } else {
      const __m256i valid = _mm256_and_si256(_mm256_cmpgt_epi32(c_vec, v_minus1),
                                             _mm256_cmpgt_epi32(v_width, c_vec));
      h_cur = _mm256_blendv_epi8(h_cur, h, valid);
      e_cur = _mm256_blendv_epi8(e_cur, e, valid);
      f_cur = _mm256_blendv_epi8(f_cur, f, valid);
      if constexpr (kTrack == Track::MaxSmallest) {
        const __m256i gt = _mm256_and_si256(_mm256_cmpgt_epi32(h, best_v), valid);
        best_v = _mm256_blendv_epi8(best_v, h, gt);
        best_c = _mm256_blendv_epi8(best_c, c_vec, gt);
      } else if constexpr (kTrack == Track::MaxLargest) {
        const __m256i take = _mm256_andnot_si256(_mm256_cmpgt_epi32(best_v, h), valid);
        best_v = _mm256_blendv_epi8(best_v, h, take);
        best_c = _mm256_blendv_epi8(best_c, c_vec, take);
      }
    }
    if (s >= kLanes - 1) {
      const std::int64_t c = s - (kLanes - 1);
      h_row[c] = _mm256_extract_epi32(h_cur, 7);
      f_row[c] = _mm256_extract_epi32(f_cur, 7);
    }
  }

  _mm256_storeu_si256(reinterpret_cast<__m256i*>(io.h_col.data() + r0), h_cur);
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(io.e_col.data() + r0), e_cur);

  if constexpr (kTrack != Track::None) {
    alignas(32) std::int32_t bv[kLanes];
    alignas(32) std::int32_t bc[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(bv), best_v);
    _mm256_store_si256(reinterpret_cast<__m256i*>(bc), best_c);
    for (int l = 0; l < kLanes; ++l) {
      if (bc[l] < 0) continue;
      const Best cand{bv[l], io.row0 + static_cast<std::int64_t>(r0) + l + 1, io.col0 + bc[l] + 1};
      if (better(kTrack, cand, best)) best = cand;
    }
  }
}

template <Mode kMode, Track kTrack>
void run_block(const Params& p, BlockIo& io, Best& best) {
  const std::size_t height = io.rows.size();
  Score corner = io.corner;
  std::size_t r0 = 0;
  for (; r0 + kLanes <= height; r0 += kLanes) {
    const Score next_corner = io.h_col[r0 + kLanes - 1];
    strip<kMode, kTrack>(p, io, r0, corner, best);
    corner = next_corner;
  }
  if (r0 < height) scalar_rows(p, io, r0, height, corner, best);
}

}  // namespace

void run_block_avx2(const Params& params, BlockIo& io, Best& best) {
  if (params.mode == Mode::Local) {
    switch (params.track) {
      case Track::None: return run_block<Mode::Local, Track::None>(params, io, best);
      case Track::MaxSmallest: return run_block<Mode::Local, Track::MaxSmallest>(params, io, best);
      case Track::MaxLargest: return run_block<Mode::Local, Track::MaxLargest>(params, io, best);
    }
  } else {
    switch (params.track) {
      case Track::None: return run_block<Mode::Constrained, Track::None>(params, io, best);
      case Track::MaxSmallest:
        return run_block<Mode::Constrained, Track::MaxSmallest>(params, io, best);
      case Track::MaxLargest:
        return run_block<Mode::Constrained, Track::MaxLargest>(params, io, best);
    }
  }
}

}  // namespace longalign::kernel
