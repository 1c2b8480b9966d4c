#include <algorithm>

#include "longalign/io.hpp"

namespace longalign::io {
namespace {

std::string pad_left(std::int64_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "stat") return Format::Stat;
  if (name == "cigar") return Format::Cigar;
  if (name == "pair") return Format::Pair;
  return std::nullopt;
}

std::string write_stat(const AlignmentSummary& summary, const std::string& id1,
                       const std::string& id2) {
  std::string out = "score: " + std::to_string(summary.score) + "\n";
  out += "target: " + std::to_string(summary.start.i + 1) + ".." + std::to_string(summary.end.i) +
         " " + id1 + "\n";
  out += "query: " + std::to_string(summary.start.j + 1) + ".." + std::to_string(summary.end.j) +
         " " + id2 + "\n";
  return out;
}

std::string write_cigar(const AlignmentPath& path) {
  return std::to_string(path.start.i) + " " + std::to_string(path.start.j) + " " +
         path_to_cigar(path.ops) + "\n";
}

std::string write_pair(const AlignmentPath& path, const Sequence& seq1, const Sequence& seq2) {
  constexpr std::size_t kWidth = 60;
  const Coord last = path.end();
  const std::size_t num_w = std::to_string(std::max(last.i, last.j)).size();
  const std::string gutter(6 + 1 + num_w + 1, ' ');

  std::string out;
  std::int64_t i = path.start.i;
  std::int64_t j = path.start.j;
  for (std::size_t k = 0; k < path.ops.size(); k += kWidth) {
    const std::size_t n = std::min(kWidth, path.ops.size() - k);
    std::string top, mid, bottom;
    const std::int64_t i0 = i, j0 = j;
    for (std::size_t q = k; q < k + n; ++q) {
      switch (path.ops[q]) {
        case Op::Match:
        case Op::Mismatch:
          top += seq1.residues[static_cast<std::size_t>(i++)];
          bottom += seq2.residues[static_cast<std::size_t>(j++)];
          mid += path.ops[q] == Op::Match ? '|' : '.';
          break;
        case Op::Insert:
          top += '-';
          bottom += seq2.residues[static_cast<std::size_t>(j++)];
          mid += ' ';
          break;
        case Op::Delete:
          top += seq1.residues[static_cast<std::size_t>(i++)];
          bottom += '-';
          mid += ' ';
          break;
      }
    }
    if (k > 0) out += '\n';
    out += "target " + pad_left(i0 + 1, num_w) + " " + top + " " + std::to_string(i) + "\n";
    out += gutter + mid + "\n";
    out += "query  " + pad_left(j0 + 1, num_w) + " " + bottom + " " + std::to_string(j) + "\n";
  }
  return out;
}

std::string write_output(Format format, const AlignmentSummary& summary,
                         const AlignmentPath& path, const Sequence& seq1, const Sequence& seq2) {
  switch (format) {
    case Format::Stat: return write_stat(summary, seq1.id, seq2.id);
    case Format::Cigar: return write_cigar(path);
    case Format::Pair: return write_pair(path, seq1, seq2);
  }
  return {};
}

}  // namespace longalign::io
