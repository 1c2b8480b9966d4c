#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace longalign {

using Score = std::int32_t;

// Sentinel for unreachable DP states. Kept far from the int32 limits so that
// adding a substitution or gap penalty never overflows; anything below
// kNegInf / 2 is treated as unreachable.
inline constexpr Score kNegInf = std::numeric_limits<Score>::min() / 4;

inline constexpr bool is_unreachable(std::int64_t s) { return s < kNegInf / 2; }

enum class ErrorCode {
  InvalidArgument,
  NonPositiveMaxScore,
  IncompleteMatrix,
  PathInconsistent,
  DiscontiguousParts,
  CellBudgetExceeded,
  WorkerPanic,
  StartNotFound,
  ScoreMismatch,
  EmptyFile,
  NoRecords,
  IllegalResidue,
  RaggedRow,
  UnknownSymbol,
  NonInteger,
};

const char* to_string(ErrorCode code);

class AlignError : public std::runtime_error {
 public:
  AlignError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for error codes that indicate a defect in this library rather than in
// the caller's input.
bool is_internal_error(ErrorCode code);

enum class AlphabetKind { Nucleotide, Protein };

/// Ordered residue set. Residues are case-folded to upper case on ingestion
/// and encoded as their index into `symbols()`.
class Alphabet {
 public:
  Alphabet(AlphabetKind kind, std::string symbols,
           std::optional<char> wildcard = std::nullopt);

  /// A, C, G, T plus the 'N' wildcard unless `strict`.
  static Alphabet dna(bool strict = false);
  /// The 20 standard amino acids.
  static Alphabet protein();

  AlphabetKind kind() const { return kind_; }
  const std::string& symbols() const { return symbols_; }
  std::optional<char> wildcard() const { return wildcard_; }
  std::size_t size() const { return symbols_.size(); }

  bool contains(char c) const;
  /// Encoded index of `c` after case folding, or -1.
  int index_of(char c) const;

  /// Throws IllegalResidue naming the 0-based offset of the first bad residue.
  std::vector<std::uint8_t> encode(std::string_view residues) const;

 private:
  AlphabetKind kind_;
  std::string symbols_;
  std::optional<char> wildcard_;
  std::array<std::int16_t, 256> lookup_{};
};

struct Sequence {
  std::string id;
  std::string residues;

  std::size_t length() const { return residues.size(); }
};

/// Substitution function over residue characters; nullopt marks an undefined
/// pair.
using SubstitutionFn = std::function<std::optional<Score>(char, char)>;

SubstitutionFn match_mismatch(Score match, Score mismatch,
                              std::optional<char> wildcard = std::nullopt);

/// Validated scoring scheme: dense substitution table over an alphabet plus
/// affine gap penalties. A gap of length k costs gap_open + k * gap_extend.
class ScoringScheme {
 public:
  const Alphabet& alphabet() const { return alphabet_; }
  Score gap_open() const { return gap_open_; }
  Score gap_extend() const { return gap_extend_; }
  Score max_substitution_score() const { return max_sub_; }

  Score substitution(std::uint8_t a, std::uint8_t b) const {
    return table_[static_cast<std::size_t>(a) * alphabet_.size() + b];
  }
  Score substitution_chars(char a, char b) const;
  /// Row-major table of size alphabet().size() squared.
  std::span<const Score> table() const { return table_; }

  Score gap_cost(std::int64_t length) const {
    return length == 0 ? 0 : static_cast<Score>(gap_open_ + length * gap_extend_);
  }

 private:
  friend ScoringScheme validate_scheme(const Alphabet&, const SubstitutionFn&,
                                       Score, Score);
  ScoringScheme(Alphabet alphabet, std::vector<Score> table, Score gap_open,
                Score gap_extend, Score max_sub)
      : alphabet_(std::move(alphabet)),
        table_(std::move(table)),
        gap_open_(gap_open),
        gap_extend_(gap_extend),
        max_sub_(max_sub) {}

  Alphabet alphabet_;
  std::vector<Score> table_;
  Score gap_open_;
  Score gap_extend_;
  Score max_sub_;
};

/// Builds the dense table, recomputes the maximum substitution score and
/// rejects incomplete or non-positive schemes.
ScoringScheme validate_scheme(const Alphabet& alphabet, const SubstitutionFn& fn,
                              Score gap_open, Score gap_extend);

/// 0-based matrix coordinate; (i, j) counts residues of seq1 / seq2 before it.
struct Coord {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

struct AlignmentSummary {
  Score score = 0;
  Coord start;
  Coord end;

  friend bool operator==(const AlignmentSummary&, const AlignmentSummary&) = default;
};

// INSERT consumes seq2 only, DELETE consumes seq1 only.
enum class Op : std::uint8_t { Match, Mismatch, Insert, Delete };

struct AlignmentPath {
  Coord start;
  std::vector<Op> ops;

  Coord end() const;
  friend bool operator==(const AlignmentPath&, const AlignmentPath&) = default;
};

/// Re-scores a path against the sequences. Each maximal INSERT or DELETE run
/// of length k costs gap_open + k * gap_extend.
std::int64_t score_of_path(const AlignmentPath& path, const Sequence& seq1,
                           const Sequence& seq2, const ScoringScheme& scheme);

std::string path_to_cigar(std::span<const Op> ops);
std::vector<Op> cigar_to_ops(std::string_view cigar);

}  // namespace longalign
