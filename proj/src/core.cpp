#include "longalign/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace longalign {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveMaxScore: return "NonPositiveMaxScore";
    case ErrorCode::IncompleteMatrix: return "IncompleteMatrix";
    case ErrorCode::PathInconsistent: return "PathInconsistent";
    case ErrorCode::DiscontiguousParts: return "DiscontiguousParts";
    case ErrorCode::CellBudgetExceeded: return "CellBudgetExceeded";
    case ErrorCode::WorkerPanic: return "WorkerPanic";
    case ErrorCode::StartNotFound: return "StartNotFound";
    case ErrorCode::ScoreMismatch: return "ScoreMismatch";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::NoRecords: return "NoRecords";
    case ErrorCode::IllegalResidue: return "IllegalResidue";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::NonInteger: return "NonInteger";
  }
  return "Unknown";
}

bool is_internal_error(ErrorCode code) {
  return code == ErrorCode::StartNotFound || code == ErrorCode::ScoreMismatch ||
         code == ErrorCode::WorkerPanic || code == ErrorCode::PathInconsistent ||
         code == ErrorCode::DiscontiguousParts;
}

Alphabet::Alphabet(AlphabetKind kind, std::string symbols, std::optional<char> wildcard)
    : kind_(kind), symbols_(std::move(symbols)), wildcard_(wildcard) {
  lookup_.fill(-1);
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    const auto c = static_cast<unsigned char>(
        std::toupper(static_cast<unsigned char>(symbols_[k])));
    symbols_[k] = static_cast<char>(c);
    if (lookup_[c] != -1) {
      throw AlignError(ErrorCode::InvalidArgument,
                       std::string("duplicate alphabet symbol '") + symbols_[k] + "'");
    }
    lookup_[c] = static_cast<std::int16_t>(k);
  }
  if (wildcard_) {
    wildcard_ = static_cast<char>(std::toupper(static_cast<unsigned char>(*wildcard_)));
    if (!contains(*wildcard_)) {
      throw AlignError(ErrorCode::InvalidArgument, "wildcard is not an alphabet symbol");
    }
  }
}

Alphabet Alphabet::dna(bool strict) {
  if (strict) return Alphabet(AlphabetKind::Nucleotide, "ACGT");
  return Alphabet(AlphabetKind::Nucleotide, "ACGTN", 'N');
}

Alphabet Alphabet::protein() {
  return Alphabet(AlphabetKind::Protein, "ARNDCQEGHILKMFPSTWYV");
}

bool Alphabet::contains(char c) const { return index_of(c) >= 0; }

int Alphabet::index_of(char c) const {
  const auto u = static_cast<unsigned char>(std::toupper(static_cast<unsigned char>(c)));
  return lookup_[u];
}

std::vector<std::uint8_t> Alphabet::encode(std::string_view residues) const {
  std::vector<std::uint8_t> out(residues.size());
  for (std::size_t k = 0; k < residues.size(); ++k) {
    const int idx = index_of(residues[k]);
    if (idx < 0) {
      throw AlignError(ErrorCode::IllegalResidue,
                       "illegal residue '" + std::string(1, residues[k]) +
                           "' at offset " + std::to_string(k));
    }
    out[k] = static_cast<std::uint8_t>(idx);
  }
  return out;
}

SubstitutionFn match_mismatch(Score match, Score mismatch, std::optional<char> wildcard) {
  return [=](char a, char b) -> std::optional<Score> {
    if (wildcard && (a == *wildcard || b == *wildcard)) return 0;
    return a == b ? match : mismatch;
  };
}

Score ScoringScheme::substitution_chars(char a, char b) const {
  const int ia = alphabet_.index_of(a);
  const int ib = alphabet_.index_of(b);
  if (ia < 0 || ib < 0) {
    throw AlignError(ErrorCode::IllegalResidue, "residue outside scheme alphabet");
  }
  return substitution(static_cast<std::uint8_t>(ia), static_cast<std::uint8_t>(ib));
}

ScoringScheme validate_scheme(const Alphabet& alphabet, const SubstitutionFn& fn,
                              Score gap_open, Score gap_extend) {
  if (gap_open < 0) {
    throw AlignError(ErrorCode::InvalidArgument, "gap_open must be non-negative");
  }
  if (gap_extend <= 0) {
    throw AlignError(ErrorCode::InvalidArgument, "gap_extend must be positive");
  }
  const auto& sym = alphabet.symbols();
  const std::size_t k = sym.size();
  std::vector<Score> table(k * k);
  Score max_sub = std::numeric_limits<Score>::min();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const auto v = fn(sym[a], sym[b]);
      if (!v) {
        throw AlignError(ErrorCode::IncompleteMatrix,
                         std::string("substitution undefined for pair ") + sym[a] + sym[b]);
      }
      table[a * k + b] = *v;
      max_sub = std::max(max_sub, *v);
    }
  }
  if (max_sub <= 0) {
    throw AlignError(ErrorCode::NonPositiveMaxScore,
                     "maximum substitution score must be positive");
  }
  return ScoringScheme(alphabet, std::move(table), gap_open, gap_extend, max_sub);
}

Coord AlignmentPath::end() const {
  Coord c = start;
  for (Op op : ops) {
    if (op != Op::Insert) ++c.i;
    if (op != Op::Delete) ++c.j;
  }
  return c;
}

std::int64_t score_of_path(const AlignmentPath& path, const Sequence& seq1,
                           const Sequence& seq2, const ScoringScheme& scheme) {
  std::int64_t score = 0;
  std::int64_t i = path.start.i;
  std::int64_t j = path.start.j;
  const auto n1 = static_cast<std::int64_t>(seq1.length());
  const auto n2 = static_cast<std::int64_t>(seq2.length());
  if (i < 0 || j < 0 || i > n1 || j > n2) {
    throw AlignError(ErrorCode::PathInconsistent, "path start outside the sequences");
  }
  std::optional<Op> run;
  for (Op op : path.ops) {
    const bool takes1 = op != Op::Insert;
    const bool takes2 = op != Op::Delete;
    if ((takes1 && i >= n1) || (takes2 && j >= n2)) {
      throw AlignError(ErrorCode::PathInconsistent, "path runs past the sequence end");
    }
    if (op == Op::Match || op == Op::Mismatch) {
      const char a = seq1.residues[static_cast<std::size_t>(i)];
      const char b = seq2.residues[static_cast<std::size_t>(j)];
      const bool equal = std::toupper(static_cast<unsigned char>(a)) ==
                         std::toupper(static_cast<unsigned char>(b));
      if (equal != (op == Op::Match)) {
        throw AlignError(ErrorCode::PathInconsistent,
                         "op label contradicts residues at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
      score += scheme.substitution_chars(a, b);
      run.reset();
    } else {
      score -= scheme.gap_extend();
      if (run != op) score -= scheme.gap_open();
      run = op;
    }
    i += takes1;
    j += takes2;
  }
  return score;
}

namespace {
char op_char(Op op) {
  switch (op) {
    case Op::Match: return '=';
    case Op::Mismatch: return 'X';
    case Op::Insert: return 'I';
    case Op::Delete: return 'D';
  }
  return '?';
}
}  // namespace

std::string path_to_cigar(std::span<const Op> ops) {
  std::string out;
  std::size_t k = 0;
  while (k < ops.size()) {
    std::size_t run = 1;
    while (k + run < ops.size() && ops[k + run] == ops[k]) ++run;
    out += std::to_string(run);
    out += op_char(ops[k]);
    k += run;
  }
  return out;
}

std::vector<Op> cigar_to_ops(std::string_view cigar) {
  std::vector<Op> ops;
  std::size_t k = 0;
  while (k < cigar.size()) {
    std::size_t count = 0;
    const auto* first = cigar.data() + k;
    const auto [ptr, ec] = std::from_chars(first, cigar.data() + cigar.size(), count);
    if (ec != std::errc() || ptr == first || ptr == cigar.data() + cigar.size()) {
      throw AlignError(ErrorCode::InvalidArgument, "malformed CIGAR");
    }
    k = static_cast<std::size_t>(ptr - cigar.data());
    Op op;
    switch (cigar[k]) {
      case '=': op = Op::Match; break;
      case 'X': op = Op::Mismatch; break;
      case 'I': op = Op::Insert; break;
      case 'D': op = Op::Delete; break;
      default: throw AlignError(ErrorCode::InvalidArgument, "unknown CIGAR op");
    }
    ops.insert(ops.end(), count, op);
    ++k;
  }
  return ops;
}

}  // namespace longalign
