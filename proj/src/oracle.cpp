#include "longalign/oracle.hpp"

#include <algorithm>
#include <vector>

namespace longalign::oracle {
namespace {

using Cell = std::int64_t;
constexpr Cell kInf = std::int64_t{1} << 50;

struct Matrices {
  std::int64_t rows, cols;
  std::vector<Cell> h, e, f;

  Matrices(std::int64_t r, std::int64_t c)
      : rows(r), cols(c),
        h(static_cast<std::size_t>((r + 1) * (c + 1)), -kInf),
        e(h.size(), -kInf),
        f(h.size(), -kInf) {}

  std::size_t at(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(i * (cols + 1) + j);
  }
};

void check_budget(std::int64_t rows, std::int64_t cols, std::int64_t budget) {
  if ((rows + 1) * (cols + 1) > budget) {
    throw AlignError(ErrorCode::CellBudgetExceeded,
                     "oracle matrix exceeds the configured cell budget");
  }
}

enum class State { H, E, F };

// Gotoh fill; `local` clamps H at zero. Borders must be set by the caller.
void fill(Matrices& m, const std::vector<std::uint8_t>& a,
          const std::vector<std::uint8_t>& b, const ScoringScheme& s, bool local) {
  const Cell goe = s.gap_open() + s.gap_extend();
  const Cell ge = s.gap_extend();
  for (std::int64_t i = 1; i <= m.rows; ++i) {
    for (std::int64_t j = 1; j <= m.cols; ++j) {
      const auto c = m.at(i, j);
      m.e[c] = std::max(m.h[m.at(i, j - 1)] - goe, m.e[m.at(i, j - 1)] - ge);
      m.f[c] = std::max(m.h[m.at(i - 1, j)] - goe, m.f[m.at(i - 1, j)] - ge);
      Cell h = m.h[m.at(i - 1, j - 1)] +
               s.substitution(a[static_cast<std::size_t>(i - 1)],
                              b[static_cast<std::size_t>(j - 1)]);
      h = std::max({h, m.e[c], m.f[c]});
      if (local) h = std::max<Cell>(h, 0);
      m.h[c] = std::max(h, -kInf);
    }
  }
}

Op diag_op(const Sequence& s1, const Sequence& s2, std::int64_t i, std::int64_t j) {
  return s1.residues[static_cast<std::size_t>(i - 1)] ==
                 s2.residues[static_cast<std::size_t>(j - 1)]
             ? Op::Match
             : Op::Mismatch;
}

// Walks back from (i, j) in state H. Stops at the origin, or at a zero H cell
// in local mode. Tie-break: diagonal, then E, then F.
Coord traceback(const Matrices& m, const std::vector<std::uint8_t>& a,
                const std::vector<std::uint8_t>& b, const Sequence& s1,
                const Sequence& s2, const ScoringScheme& s, bool local,
                std::int64_t i, std::int64_t j, std::vector<Op>& ops) {
  const Cell goe = s.gap_open() + s.gap_extend();
  const Cell ge = s.gap_extend();
  State st = State::H;
  while (i > 0 || j > 0) {
    const auto c = m.at(i, j);
    if (st == State::H) {
      if (local && m.h[c] == 0) break;
      if (i == 0) { st = State::E; continue; }
      if (j == 0) { st = State::F; continue; }
      const Cell diag = m.h[m.at(i - 1, j - 1)] +
                        s.substitution(a[static_cast<std::size_t>(i - 1)],
                                       b[static_cast<std::size_t>(j - 1)]);
      if (m.h[c] == diag) {
        ops.push_back(diag_op(s1, s2, i, j));
        --i;
        --j;
      } else if (m.h[c] == m.e[c]) {
        st = State::E;
      } else {
        st = State::F;
      }
    } else if (st == State::E) {
      ops.push_back(Op::Insert);
      if (i == 0 || m.e[c] == m.h[m.at(i, j - 1)] - goe) st = State::H;
      else if (m.e[c] != m.e[m.at(i, j - 1)] - ge) st = State::H;
      --j;
    } else {
      ops.push_back(Op::Delete);
      if (j == 0 || m.f[c] == m.h[m.at(i - 1, j)] - goe) st = State::H;
      else if (m.f[c] != m.f[m.at(i - 1, j)] - ge) st = State::H;
      --i;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return Coord{i, j};
}

}  // namespace

std::pair<AlignmentSummary, AlignmentPath> oracle_local(const Sequence& seq1,
                                                        const Sequence& seq2,
                                                        const ScoringScheme& scheme,
                                                        std::int64_t cell_budget) {
  const auto n1 = static_cast<std::int64_t>(seq1.length());
  const auto n2 = static_cast<std::int64_t>(seq2.length());
  check_budget(n1, n2, cell_budget);
  const auto a = scheme.alphabet().encode(seq1.residues);
  const auto b = scheme.alphabet().encode(seq2.residues);

  Matrices m(n1, n2);
  for (std::int64_t i = 0; i <= n1; ++i) m.h[m.at(i, 0)] = 0;
  for (std::int64_t j = 0; j <= n2; ++j) m.h[m.at(0, j)] = 0;
  fill(m, a, b, scheme, true);

  Cell best = 0;
  Coord end{0, 0};
  for (std::int64_t i = 1; i <= n1; ++i) {
    for (std::int64_t j = 1; j <= n2; ++j) {
      if (m.h[m.at(i, j)] > best) {
        best = m.h[m.at(i, j)];
        end = {i, j};
      }
    }
  }
  AlignmentPath path;
  if (best > 0) {
    path.start = traceback(m, a, b, seq1, seq2, scheme, true, end.i, end.j, path.ops);
  } else {
    path.start = end;
  }
  AlignmentSummary summary{static_cast<Score>(best), path.start, end};
  return {summary, path};
}

std::pair<std::int64_t, AlignmentPath> oracle_global(const Sequence& seq1,
                                                     const Sequence& seq2,
                                                     const ScoringScheme& scheme,
                                                     BorderRule border_rule,
                                                     std::int64_t cell_budget) {
  const auto n1 = static_cast<std::int64_t>(seq1.length());
  const auto n2 = static_cast<std::int64_t>(seq2.length());
  check_budget(n1, n2, cell_budget);
  const auto a = scheme.alphabet().encode(seq1.residues);
  const auto b = scheme.alphabet().encode(seq2.residues);

  Matrices m(n1, n2);
  m.h[m.at(0, 0)] = 0;
  if (border_rule == BorderRule::AffineGaps) {
    for (std::int64_t i = 1; i <= n1; ++i) {
      m.h[m.at(i, 0)] = -(scheme.gap_open() + i * scheme.gap_extend());
      m.f[m.at(i, 0)] = m.h[m.at(i, 0)];
    }
    for (std::int64_t j = 1; j <= n2; ++j) {
      m.h[m.at(0, j)] = -(scheme.gap_open() + j * scheme.gap_extend());
      m.e[m.at(0, j)] = m.h[m.at(0, j)];
    }
  }
  fill(m, a, b, scheme, false);

  const Cell score = m.h[m.at(n1, n2)];
  AlignmentPath path;
  if (score <= -kInf / 2) return {kNegInf, path};
  traceback(m, a, b, seq1, seq2, scheme, false, n1, n2, path.ops);
  return {score, path};
}

}  // namespace longalign::oracle
