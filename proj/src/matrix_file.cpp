#include <cctype>
#include <charconv>

#include "longalign/io.hpp"

namespace longalign::io {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    const std::size_t b = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > b) out.push_back(line.substr(b, k - b));
  }
  return out;
}

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

}  // namespace

std::optional<Score> SubstitutionMatrix::at(char a, char b) const {
  const auto ia = symbols.find(upper(a));
  const auto ib = symbols.find(upper(b));
  if (ia == std::string::npos || ib == std::string::npos) return std::nullopt;
  return values[ia * symbols.size() + ib];
}

SubstitutionFn SubstitutionMatrix::function() const {
  return [m = *this](char a, char b) { return m.at(a, b); };
}

SubstitutionMatrix parse_matrix(std::string_view text) {
  SubstitutionMatrix m;
  std::vector<bool> seen;
  bool have_header = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    const std::string where = " on line " + std::to_string(line_no);

    if (!have_header) {
      for (auto f : fields) {
        if (f.size() != 1) throw AlignError(ErrorCode::UnknownSymbol, "header symbol '" + std::string(f) + "'" + where);
        if (m.symbols.find(upper(f[0])) != std::string::npos) {
          throw AlignError(ErrorCode::UnknownSymbol, "duplicate header symbol '" + std::string(f) + "'" + where);
        }
        m.symbols.push_back(upper(f[0]));
      }
      m.values.assign(m.symbols.size() * m.symbols.size(), 0);
      seen.assign(m.symbols.size(), false);
      have_header = true;
      continue;
    }

    if (fields.size() != m.symbols.size() + 1) {
      throw AlignError(ErrorCode::RaggedRow, "row has " + std::to_string(fields.size() - 1) +
                                                 " values, expected " +
                                                 std::to_string(m.symbols.size()) + where);
    }
    if (fields[0].size() != 1 || m.symbols.find(upper(fields[0][0])) == std::string::npos) {
      throw AlignError(ErrorCode::UnknownSymbol, "row symbol '" + std::string(fields[0]) + "'" + where);
    }
    const std::size_t row = m.symbols.find(upper(fields[0][0]));
    if (seen[row]) {
      throw AlignError(ErrorCode::UnknownSymbol, "row symbol '" + std::string(fields[0]) + "' repeated" + where);
    }
    seen[row] = true;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto f = fields[k];
      Score v = 0;
      const char* first = f.data();
      if (!f.empty() && f.front() == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || first == f.data() + f.size()) {
        throw AlignError(ErrorCode::NonInteger, "value '" + std::string(f) + "'" + where);
      }
      m.values[row * m.symbols.size() + (k - 1)] = v;
    }
  }
  if (!have_header) throw AlignError(ErrorCode::EmptyFile, "matrix file has no header line");
  for (std::size_t r = 0; r < seen.size(); ++r) {
    if (!seen[r]) {
      throw AlignError(ErrorCode::RaggedRow, std::string("no row for symbol '") + m.symbols[r] + "'");
    }
  }
  const std::size_t n = m.symbols.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (m.values[a * n + b] != m.values[b * n + a]) m.symmetric = false;
    }
  }
  return m;
}

}  // namespace longalign::io
