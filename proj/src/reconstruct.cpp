#include "longalign/reconstruct.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "longalign/memstat.hpp"

namespace longalign {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

[[noreturn]] void mismatch(const char* where, std::int64_t got, Score expected) {
  throw AlignError(ErrorCode::ScoreMismatch, std::string(where) + ": recomputed score " +
                                                 std::to_string(got) + " differs from " +
                                                 std::to_string(expected));
}

std::vector<std::uint8_t> reversed(std::span<const std::uint8_t> s) {
  return std::vector<std::uint8_t>(s.rbegin(), s.rend());
}

}  // namespace

EditBound edit_bound(const Subproblem& sub, const ScoringScheme& scheme) {
  EditBound eb;
  const std::int64_t longest = std::max(sub.rows(), sub.cols());
  eb.t_edit = std::max<std::int64_t>(0, longest - floor_div(sub.expected, scheme.max_substitution_score()));
  const std::int64_t n = std::min(sub.rows(), sub.cols());
  const std::int64_t m = longest;
  const std::int64_t ms = scheme.max_substitution_score();
  const std::int64_t ge = scheme.gap_extend();
  eb.padding = std::max<std::int64_t>(0, floor_div(ms * n - ge * (m - n) - sub.expected, ms + 2 * ge));
  return eb;
}

DiagonalBand subproblem_band(const Subproblem& sub, const ScoringScheme& scheme) {
  const std::int64_t q = edit_bound(sub, scheme).padding;
  const std::int64_t shift = sub.cols() - sub.rows();
  return DiagonalBand{std::min<std::int64_t>(0, shift) - q, std::max<std::int64_t>(0, shift) + q};
}

std::optional<MiddleChoice> combine_middle(std::span<const Score> up_h, std::span<const Score> up_f,
                                           std::span<const Score> down_h,
                                           std::span<const Score> down_f, Score gap_open) {
  std::optional<MiddleChoice> best;
  const auto cols = static_cast<std::int64_t>(up_h.size()) - 1;
  for (std::int64_t j = 0; j <= cols; ++j) {
    const auto fwd = static_cast<std::size_t>(j);
    const auto rev = static_cast<std::size_t>(cols - j);
    if (!is_unreachable(up_h[fwd]) && !is_unreachable(down_h[rev])) {
      const std::int64_t v = std::int64_t{up_h[fwd]} + down_h[rev];
      if (!best || v > best->score) best = MiddleChoice{j, v, false};
    }
    if (!is_unreachable(up_f[fwd]) && !is_unreachable(down_f[rev])) {
      const std::int64_t v = std::int64_t{up_f[fwd]} + down_f[rev] + gap_open;
      if (!best || v > best->score) best = MiddleChoice{j, v, true};
    }
  }
  return best;
}

Crossing find_crossing(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                       const Subproblem& sub, const ScoringScheme& scheme, bool use_band,
                       const EngineConfig& config) {
  const std::int64_t a = sub.rows();
  const std::int64_t b = sub.cols();
  if (a < 2) throw AlignError(ErrorCode::InvalidArgument, "crossing needs at least two rows");
  const std::int64_t mid = a / 2;
  const auto cols = seq2.subspan(static_cast<std::size_t>(sub.start.j), static_cast<std::size_t>(b));
  const auto top = seq1.subspan(static_cast<std::size_t>(sub.start.i), static_cast<std::size_t>(mid));
  const auto bottom = seq1.subspan(static_cast<std::size_t>(sub.start.i + mid),
                                   static_cast<std::size_t>(a - mid));

  std::optional<DiagonalBand> band;
  std::optional<DiagonalBand> band_rev;
  if (use_band) {
    band = subproblem_band(sub, scheme);
    band_rev = DiagonalBand{(b - a) - band->hi, (b - a) - band->lo};
  }

  PassSpec up;
  up.rows = top;
  up.cols = cols;
  up.scheme = &scheme;
  up.mode = kernel::Mode::Constrained;
  up.border = Border{BorderKind::Global, sub.begins_with_gap};
  up.band = band;
  const auto upper = run_wavefront(plan_grid(mid, b, config.block), up, config);

  const auto rrows = reversed(bottom);
  const auto rcols = reversed(cols);
  PassSpec down = up;
  down.rows = rrows;
  down.cols = rcols;
  down.border = Border{BorderKind::Global, sub.ends_with_gap};
  down.band = band_rev;
  const auto lower = run_wavefront(plan_grid(a - mid, b, config.block), down, config);

  const auto choice = combine_middle(upper.last_row_h.span(), upper.last_row_f.span(),
                                     lower.last_row_h.span(), lower.last_row_f.span(),
                                     scheme.gap_open());
  if (!choice) {
    throw AlignError(ErrorCode::ScoreMismatch, "no column joins the two halves");
  }
  if (choice->score != sub.expected) mismatch("crossing", choice->score, sub.expected);

  const auto fwd = static_cast<std::size_t>(choice->column);
  const auto rev = static_cast<std::size_t>(b - choice->column);
  Crossing c;
  c.mid = Coord{sub.start.i + mid, sub.start.j + choice->column};
  c.gap_join = choice->gap_join;
  c.upper_score = c.gap_join ? upper.last_row_f[fwd] : upper.last_row_h[fwd];
  c.lower_score = c.gap_join ? lower.last_row_f[rev] : lower.last_row_h[rev];
  return c;
}

AlignmentPath leaf_align(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                         const Subproblem& sub, const ScoringScheme& scheme, bool use_band) {
  const std::int64_t a = sub.rows();
  const std::int64_t b = sub.cols();
  const std::int64_t go = scheme.gap_open();
  const std::int64_t ge = scheme.gap_extend();
  AlignmentPath path;
  path.start = sub.start;

  if (b == 0 || a == 0) {
    const bool flagged = sub.begins_with_gap || sub.ends_with_gap;
    if (b > 0 && flagged) mismatch("leaf", kNegInf, sub.expected);
    const std::int64_t len = a + b;
    const std::int64_t got = len == 0 ? 0 : -(go + len * ge);
    if (got != sub.expected) mismatch("leaf", got, sub.expected);
    path.ops.assign(static_cast<std::size_t>(len), a > 0 ? Op::Delete : Op::Insert);
    return path;
  }

  const auto w = static_cast<std::size_t>(b + 1);
  const auto cells = static_cast<std::size_t>(a + 1) * w;
  memstat::TrackedBuffer<Score> H(memstat::Pool::Leaf, cells, kNegInf);
  memstat::TrackedBuffer<Score> E(memstat::Pool::Leaf, cells, kNegInf);
  memstat::TrackedBuffer<Score> F(memstat::Pool::Leaf, cells, kNegInf);
  const auto at = [w](std::int64_t i, std::int64_t j) {
    return static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j);
  };
  const auto clamp = [](std::int64_t v) { return static_cast<Score>(std::max<std::int64_t>(v, kNegInf)); };

  const Border border{BorderKind::Global, sub.begins_with_gap};
  for (std::int64_t i = 0; i <= a; ++i) {
    H[at(i, 0)] = border_h_left(border, scheme, i);
    F[at(i, 0)] = border_f_left(border, scheme, i);
  }
  for (std::int64_t j = 1; j <= b; ++j) {
    H[at(0, j)] = sub.begins_with_gap ? kNegInf : clamp(-(go + j * ge));
    E[at(0, j)] = H[at(0, j)];
  }

  std::int64_t lo = -a, hi = b;
  if (use_band) {
    const auto band = subproblem_band(sub, scheme);
    lo = band.lo;
    hi = band.hi;
  }
  const auto r = seq1.subspan(static_cast<std::size_t>(sub.start.i), static_cast<std::size_t>(a));
  const auto c = seq2.subspan(static_cast<std::size_t>(sub.start.j), static_cast<std::size_t>(b));
  for (std::int64_t i = 1; i <= a; ++i) {
    for (std::int64_t j = std::max<std::int64_t>(1, i + lo); j <= std::min(b, i + hi); ++j) {
      const std::int64_t e = std::max<std::int64_t>(std::int64_t{H[at(i, j - 1)]} - go - ge,
                                                    std::int64_t{E[at(i, j - 1)]} - ge);
      const std::int64_t f = std::max<std::int64_t>(std::int64_t{H[at(i - 1, j)]} - go - ge,
                                                    std::int64_t{F[at(i - 1, j)]} - ge);
      const std::int64_t d = std::int64_t{H[at(i - 1, j - 1)]} +
                             scheme.substitution(r[static_cast<std::size_t>(i - 1)],
                                                 c[static_cast<std::size_t>(j - 1)]);
      E[at(i, j)] = clamp(e);
      F[at(i, j)] = clamp(f);
      H[at(i, j)] = clamp(std::max({d, e, f}));
    }
  }

  enum class State { H, E, F };
  State state = sub.ends_with_gap ? State::F : State::H;
  const Score final_score = sub.ends_with_gap ? F[at(a, b)] : H[at(a, b)];
  if (is_unreachable(final_score) || final_score != sub.expected) {
    mismatch("leaf", final_score, sub.expected);
  }

  std::vector<Op> rev_ops;
  rev_ops.reserve(static_cast<std::size_t>(a + b));
  std::int64_t i = a, j = b;
  while (i > 0 || j > 0) {
    if (j == 0) {
      rev_ops.insert(rev_ops.end(), static_cast<std::size_t>(i), Op::Delete);
      break;
    }
    if (i == 0) {
      rev_ops.insert(rev_ops.end(), static_cast<std::size_t>(j), Op::Insert);
      break;
    }
    const std::int64_t h = H[at(i, j)];
    switch (state) {
      case State::H: {
        const std::uint8_t x = r[static_cast<std::size_t>(i - 1)];
        const std::uint8_t y = c[static_cast<std::size_t>(j - 1)];
        const std::int64_t prev = H[at(i - 1, j - 1)];
        if (!is_unreachable(prev) && prev + scheme.substitution(x, y) == h) {
          rev_ops.push_back(x == y ? Op::Match : Op::Mismatch);
          --i;
          --j;
        } else if (E[at(i, j)] == h) {
          state = State::E;
        } else if (F[at(i, j)] == h) {
          state = State::F;
        } else {
          throw AlignError(ErrorCode::PathInconsistent, "leaf traceback lost the path");
        }
        break;
      }
      case State::E: {
        const std::int64_t e = E[at(i, j)];
        rev_ops.push_back(Op::Insert);
        if (std::int64_t{H[at(i, j - 1)]} - go - ge == e) state = State::H;
        --j;
        break;
      }
      case State::F: {
        const std::int64_t f = F[at(i, j)];
        rev_ops.push_back(Op::Delete);
        if (std::int64_t{H[at(i - 1, j)]} - go - ge == f) state = State::H;
        --i;
        break;
      }
    }
  }
  path.ops.assign(rev_ops.rbegin(), rev_ops.rend());
  return path;
}

AlignmentPath join_paths(std::span<const AlignmentPath> parts) {
  AlignmentPath out;
  if (parts.empty()) return out;
  out.start = parts.front().start;
  Coord cursor = out.start;
  for (const auto& part : parts) {
    if (part.start != cursor) {
      throw AlignError(ErrorCode::DiscontiguousParts,
                       "part starts at (" + std::to_string(part.start.i) + ", " +
                           std::to_string(part.start.j) + ") but the previous part ends at (" +
                           std::to_string(cursor.i) + ", " + std::to_string(cursor.j) + ")");
    }
    out.ops.insert(out.ops.end(), part.ops.begin(), part.ops.end());
    cursor = part.end();
  }
  return out;
}

namespace {

class LeafPool {
 public:
  explicit LeafPool(int threads) {
    for (int t = 0; t < threads; ++t) {
      threads_.emplace_back([this] { loop(); });
    }
  }
  ~LeafPool() { drain(); }

  void submit(std::function<void()> task) {
    {
      std::lock_guard lock(mu_);
      tasks_.push(std::move(task));
    }
    cv_.notify_one();
  }

  void drain() {
    {
      std::lock_guard lock(mu_);
      closing_ = true;
    }
    cv_.notify_all();
    threads_.clear();
  }

 private:
  void loop() {
    for (;;) {
      std::function<void()> task;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [this] { return closing_ || !tasks_.empty(); });
        if (tasks_.empty()) return;
        task = std::move(tasks_.front());
        tasks_.pop();
      }
      task();
    }
  }

  std::mutex mu_;
  std::condition_variable cv_;
  std::queue<std::function<void()>> tasks_;
  bool closing_ = false;
  std::vector<std::jthread> threads_;
};

struct LeafSlot {
  AlignmentPath path;
  std::exception_ptr error;
};

struct Solver {
  std::span<const std::uint8_t> seq1;
  std::span<const std::uint8_t> seq2;
  const ScoringScheme& scheme;
  const ReconstructOptions& options;
  const EngineConfig& config;
  ReconstructStats& stats;
  LeafPool* pool;
  std::deque<LeafSlot> slots;

  bool is_leaf(const Subproblem& sub) const {
    const std::int64_t a = sub.rows(), b = sub.cols();
    return b == 0 || a <= 1 || a * b <= options.leaf_limit;
  }

  void solve(const Subproblem& sub) {
    if (is_leaf(sub)) {
      ++stats.leaves;
      stats.max_leaf_cells = std::max(stats.max_leaf_cells, (sub.rows() + 1) * (sub.cols() + 1));
      LeafSlot& slot = slots.emplace_back();
      auto run = [this, sub, &slot] {
        try {
          slot.path = leaf_align(seq1, seq2, sub, scheme, options.band);
        } catch (...) {
          slot.error = std::current_exception();
        }
      };
      if (pool != nullptr) {
        pool->submit(run);
      } else {
        run();
      }
      return;
    }
    ++stats.splits;
    stats.pass_cells += sub.rows() * sub.cols();
    const Crossing c = find_crossing(seq1, seq2, sub, scheme, options.band, config);
    solve(Subproblem{sub.start, c.mid, c.upper_score, sub.begins_with_gap, c.gap_join});
    solve(Subproblem{c.mid, sub.end, c.lower_score, c.gap_join, sub.ends_with_gap});
  }
};

}  // namespace

AlignmentPath reconstruct_subproblem(std::span<const std::uint8_t> seq1,
                                     std::span<const std::uint8_t> seq2, const Subproblem& sub,
                                     const ScoringScheme& scheme, const ReconstructOptions& options,
                                     const EngineConfig& config, ReconstructStats* stats) {
  if (sub.start.i < 0 || sub.start.j < 0 || sub.end.i < sub.start.i || sub.end.j < sub.start.j ||
      sub.end.i > static_cast<std::int64_t>(seq1.size()) ||
      sub.end.j > static_cast<std::int64_t>(seq2.size())) {
    throw AlignError(ErrorCode::InvalidArgument, "subproblem outside the sequences");
  }
  ReconstructStats local;
  std::optional<LeafPool> pool;
  if (options.concurrent_leaves && config.workers > 1) pool.emplace(config.workers);
  Solver solver{seq1, seq2, scheme, options, config, local, pool ? &*pool : nullptr, {}};
  std::exception_ptr failure;
  try {
    solver.solve(sub);
  } catch (...) {
    failure = std::current_exception();
  }
  if (pool) pool->drain();
  if (failure) std::rethrow_exception(failure);

  std::vector<AlignmentPath> parts;
  parts.reserve(solver.slots.size());
  for (auto& slot : solver.slots) {
    if (slot.error) std::rethrow_exception(slot.error);
    parts.push_back(std::move(slot.path));
  }
  AlignmentPath path = join_paths(parts);
  path.start = sub.start;
  if (path.end() != sub.end) {
    throw AlignError(ErrorCode::DiscontiguousParts, "reconstructed path misses the end point");
  }
  if (stats != nullptr) *stats = local;
  return path;
}

AlignmentPath reconstruct(std::span<const std::uint8_t> seq1, std::span<const std::uint8_t> seq2,
                          const ScoringScheme& scheme, const AlignmentSummary& summary,
                          const ReconstructOptions& options, const EngineConfig& config,
                          ReconstructStats* stats) {
  if (summary.start == summary.end) {
    if (stats != nullptr) *stats = {};
    return AlignmentPath{summary.start, {}};
  }
  return reconstruct_subproblem(seq1, seq2, Subproblem{summary.start, summary.end, summary.score},
                                scheme, options, config, stats);
}

}  // namespace longalign
