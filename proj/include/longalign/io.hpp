#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "longalign/core.hpp"

namespace longalign::io {

/// Parses FASTA text. Records start at '>' header lines (the id is the first
/// word of the header); wrapped residue lines are joined, whitespace is
/// ignored and residues are upper-cased and checked against `alphabet`.
/// Throws EmptyFile, NoRecords or IllegalResidue (with the 0-based offset in
/// the record).
std::vector<Sequence> parse_fasta(std::string_view text, const Alphabet& alphabet);

/// Renders a record with 60 residues per line.
std::string write_fasta(const Sequence& seq);

struct SubstitutionMatrix {
  std::string symbols;       // column order, upper-cased
  std::vector<Score> values;  // row-major, symbols.size()^2
  bool symmetric = true;

  std::optional<Score> at(char a, char b) const;
  SubstitutionFn function() const;
};

/// NCBI-style matrix text: '#' comments, a header line of column symbols,
/// then one row per symbol (row symbol followed by integers). Throws
/// RaggedRow, UnknownSymbol, NonInteger, or EmptyFile.
SubstitutionMatrix parse_matrix(std::string_view text);

enum class Format { Stat, Cigar, Pair };

std::optional<Format> parse_format(std::string_view name);

std::string write_stat(const AlignmentSummary& summary, const std::string& id1,
                       const std::string& id2);
std::string write_cigar(const AlignmentPath& path);
/// 60-column blocks of target line, match line ('|' match, '.' mismatch,
/// ' ' gap) and query line, with 1-based coordinates in the margins.
std::string write_pair(const AlignmentPath& path, const Sequence& seq1, const Sequence& seq2);

std::string write_output(Format format, const AlignmentSummary& summary,
                         const AlignmentPath& path, const Sequence& seq1, const Sequence& seq2);

std::string read_file(const std::string& path);

}  // namespace longalign::io
