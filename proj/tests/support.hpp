#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "longalign/core.hpp"

namespace testsupport {

using longalign::Score;
using longalign::ScoringScheme;
using longalign::Sequence;

inline ScoringScheme dna_scheme(Score match, Score mismatch, Score go, Score ge) {
  const auto dna = longalign::Alphabet::dna();
  return longalign::validate_scheme(dna, longalign::match_mismatch(match, mismatch, dna.wildcard()),
                                    go, ge);
}

inline ScoringScheme protein_scheme(Score match, Score mismatch, Score go, Score ge) {
  return longalign::validate_scheme(longalign::Alphabet::protein(),
                                    longalign::match_mismatch(match, mismatch), go, ge);
}

inline std::string random_residues(std::mt19937_64& rng, const std::string& symbols,
                                   std::size_t length) {
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::string s(length, 'A');
  for (auto& c : s) c = symbols[pick(rng)];
  return s;
}

/// Substitutions, single-residue insertions and deletions at `rate`.
inline std::string mutate(std::mt19937_64& rng, const std::string& s, const std::string& symbols,
                          double rate) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::string out;
  out.reserve(s.size() + s.size() / 50);
  for (char c : s) {
    const double r = u(rng);
    if (r < rate / 3) {
      continue;
    } else if (r < 2 * rate / 3) {
      out += symbols[pick(rng)];
      out += c;
    } else if (r < rate) {
      out += symbols[pick(rng)];
    } else {
      out += c;
    }
  }
  return out;
}

struct RandomCase {
  Sequence seq1;
  Sequence seq2;
  ScoringScheme scheme;
  std::string label;
};

/// Random pair and scheme with match in [1,5], mismatch in [-5,-1],
/// gap_open in [0,10], gap_extend in [1,5]. Four cases in ten are adversarial
/// (identical, disjoint, one-symbol, repetitive).
inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_len, bool protein) {
  auto dist = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Score match = dist(1, 5), mismatch = dist(-5, -1), go = dist(0, 10), ge = dist(1, 5);
  const std::string symbols = protein ? "ARNDCQEGHILKMFPSTWYV" : "ACGT";
  ScoringScheme scheme = protein ? protein_scheme(match, mismatch, go, ge)
                                 : dna_scheme(match, mismatch, go, ge);
  const auto len1 = static_cast<std::size_t>(dist(1, static_cast<int>(max_len)));
  const auto len2 = static_cast<std::size_t>(dist(1, static_cast<int>(max_len)));
  std::string a, b, label = "random";
  switch (dist(0, 9)) {
    case 0:
      a = random_residues(rng, symbols, len1);
      b = a;
      label = "identical";
      break;
    case 1:
      a = std::string(len1, symbols[0]);
      b = std::string(len2, symbols[1]);
      label = "disjoint";
      break;
    case 2:
      a = std::string(len1, symbols[0]);
      b = std::string(len2, symbols[0]);
      label = "one-symbol";
      break;
    case 3: {
      const std::string unit = random_residues(rng, symbols, static_cast<std::size_t>(dist(1, 4)));
      for (std::size_t k = 0; a.size() < len1; ++k) a += unit[k % unit.size()];
      for (std::size_t k = static_cast<std::size_t>(dist(0, 3)); b.size() < len2; ++k) b += unit[k % unit.size()];
      label = "repetitive";
      break;
    }
    case 4:
    case 5:
      a = random_residues(rng, symbols, len1);
      b = mutate(rng, a, symbols, 0.15);
      if (b.empty()) b = symbols.substr(0, 1);
      label = "related";
      break;
    default:
      a = random_residues(rng, symbols, len1);
      b = random_residues(rng, symbols, len2);
  }
  return RandomCase{Sequence{"a", a}, Sequence{"b", b}, std::move(scheme), label};
}

inline constexpr std::int64_t kMinusInf = std::numeric_limits<std::int64_t>::min() / 4;

/// Exhaustive alignment scorer written as a suffix recursion over explicit
/// gap runs (no E/F matrices). Exponential-free thanks to memoisation but
/// cubic, so only for short inputs.
class BruteForce {
 public:
  BruteForce(const std::string& a, const std::string& b, const ScoringScheme& scheme)
      : a_(a), b_(b), s_(scheme) {}

  /// Best local score (0 for the empty alignment).
  std::int64_t local() {
    memo_.assign((a_.size() + 1) * (b_.size() + 1), std::nullopt);
    std::int64_t best = 0;
    for (std::size_t i = 0; i <= a_.size(); ++i) {
      for (std::size_t j = 0; j <= b_.size(); ++j) best = std::max(best, free_end(i, j));
    }
    return best;
  }

  /// Best global score of a against b. `first_delete` / `last_delete` force a
  /// leading / trailing DELETE run; `first_diagonal` forces the first op to be
  /// a substitution (unreachable origin borders). Returns kMinusInf if no
  /// alignment qualifies.
  std::int64_t global(bool first_delete = false, bool last_delete = false,
                      bool first_diagonal = false) {
    last_delete_ = last_delete;
    memo3_.assign((a_.size() + 1) * (b_.size() + 1) * 2, std::nullopt);
    const std::size_t n = a_.size(), m = b_.size();
    if (n == 0 && m == 0) return (first_delete || last_delete) ? kMinusInf : 0;
    std::int64_t best = kMinusInf;
    if (first_delete) {
      for (std::size_t k = 1; k <= n; ++k) best = std::max(best, add(-gap(k), to_end(k, 0, true)));
      return best;
    }
    if (first_diagonal) {
      if (n == 0 || m == 0) return kMinusInf;
      return add(sub(0, 0), to_end(1, 1, false));
    }
    return to_end(0, 0, false);
  }

  /// Best score of an alignment starting exactly at (0,0) with a substitution
  /// (or, with first_delete, a DELETE run) and ending anywhere.
  std::int64_t anchored_free_end(bool first_delete) {
    std::int64_t best = kMinusInf;
    for (std::size_t i = 1; i <= a_.size(); ++i) {
      for (std::size_t j = 0; j <= b_.size(); ++j) {
        if (!first_delete && j == 0) continue;
        BruteForce part(a_.substr(0, i), b_.substr(0, j), s_);
        best = std::max(best, part.global(first_delete, false, !first_delete));
      }
    }
    return best;
  }

 private:
  std::int64_t gap(std::size_t k) const {
    return static_cast<std::int64_t>(s_.gap_open()) + static_cast<std::int64_t>(k) * s_.gap_extend();
  }
  std::int64_t sub(std::size_t i, std::size_t j) const { return s_.substitution_chars(a_[i], b_[j]); }
  static std::int64_t add(std::int64_t x, std::int64_t y) {
    return (x <= kMinusInf || y <= kMinusInf) ? kMinusInf : x + y;
  }

  // Local alignment beginning at (i, j): stop anywhere.
  std::int64_t free_end(std::size_t i, std::size_t j) {
    auto& slot = memo_[i * (b_.size() + 1) + j];
    if (slot) return *slot;
    std::int64_t best = 0;
    if (i < a_.size() && j < b_.size()) best = std::max(best, sub(i, j) + free_end(i + 1, j + 1));
    for (std::size_t k = 1; i + k <= a_.size(); ++k) best = std::max(best, -gap(k) + free_end(i + k, j));
    for (std::size_t k = 1; j + k <= b_.size(); ++k) best = std::max(best, -gap(k) + free_end(i, j + k));
    slot = best;
    return best;
  }

  std::int64_t to_end(std::size_t i, std::size_t j, bool after_delete) {
    const std::size_t n = a_.size(), m = b_.size();
    if (i == n && j == m) return (last_delete_ && !after_delete) ? kMinusInf : 0;
    auto& slot = memo3_[(i * (m + 1) + j) * 2 + (after_delete ? 1 : 0)];
    if (slot) return *slot;
    std::int64_t best = kMinusInf;
    if (i < n && j < m) best = std::max(best, add(sub(i, j), to_end(i + 1, j + 1, false)));
    for (std::size_t k = 1; i + k <= n; ++k) best = std::max(best, add(-gap(k), to_end(i + k, j, true)));
    for (std::size_t k = 1; j + k <= m; ++k) best = std::max(best, add(-gap(k), to_end(i, j + k, false)));
    slot = best;
    return best;
  }

  std::string a_, b_;
  const ScoringScheme& s_;
  bool last_delete_ = false;
  std::vector<std::optional<std::int64_t>> memo_;
  std::vector<std::optional<std::int64_t>> memo3_;
};

inline std::vector<std::uint8_t> encode(const ScoringScheme& s, const std::string& r) {
  return s.alphabet().encode(r);
}

}  // namespace testsupport
