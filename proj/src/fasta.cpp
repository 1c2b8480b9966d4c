#include <cctype>
#include <fstream>
#include <sstream>

#include "longalign/io.hpp"

namespace longalign::io {

std::vector<Sequence> parse_fasta(std::string_view text, const Alphabet& alphabet) {
  bool blank = true;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) throw AlignError(ErrorCode::EmptyFile, "input is empty");

  std::vector<Sequence> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!line.empty() && line.front() == '>') {
      std::string_view header = line.substr(1);
      const auto first = header.find_first_not_of(" \t");
      header = first == std::string_view::npos ? std::string_view{} : header.substr(first);
      records.push_back(Sequence{std::string(header.substr(0, header.find_first_of(" \t"))), {}});
      continue;
    }
    if (!line.empty() && line.front() == ';') continue;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (records.empty()) {
        throw AlignError(ErrorCode::NoRecords,
                         "residues before the first '>' header (line " + std::to_string(line_no) + ")");
      }
      Sequence& rec = records.back();
      if (!alphabet.contains(c)) {
        throw AlignError(ErrorCode::IllegalResidue,
                         "illegal residue '" + std::string(1, c) + "' at offset " +
                             std::to_string(rec.residues.size()) + " of record '" + rec.id + "'");
      }
      rec.residues.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (records.empty()) throw AlignError(ErrorCode::NoRecords, "no '>' records found");
  return records;
}

std::string write_fasta(const Sequence& seq) {
  std::string out = ">" + seq.id + "\n";
  for (std::size_t k = 0; k < seq.residues.size(); k += 60) {
    out.append(seq.residues, k, 60);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AlignError(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace longalign::io
