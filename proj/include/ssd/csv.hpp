#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssd/sign_matrix.hpp"

// Design CSV: optional header of column labels ("c3", "c1*c2"), then one run
// per line with comma-separated "+1" / "-1" tokens. Writers always emit the
// header and '\n' line endings.

namespace ssd {

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline void write_design_csv(std::ostream& os, const SignMatrix& x) {
  for (std::size_t c = 0; c < x.cols(); ++c) os << (c ? "," : "") << x.label(c).to_string();
  os << '\n';
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) os << (c ? "," : "") << (x(r, c) == 1 ? "+1" : "-1");
    os << '\n';
  }
}

inline std::string design_csv(const SignMatrix& x) {
  std::ostringstream os;
  write_design_csv(os, x);
  return os.str();
}

/// Strict reader: only "+1" and "-1" tokens in data rows, all rows the same
/// length. A first line whose first token is not a sign is read as labels.
inline SignMatrix read_design_csv(std::istream& is) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw CsvError(1, 1, "empty design file");

  std::size_t first_data = 0;
  std::vector<ColumnLabel> labels;
  const auto head = detail::split_commas(lines[0]);
  if (head[0] != "+1" && head[0] != "-1") {
    for (std::size_t c = 0; c < head.size(); ++c) {
      auto label = ColumnLabel::parse(head[c]);
      if (!label) throw CsvError(1, c + 1, "bad column label '" + head[c] + "'");
      labels.push_back(*label);
    }
    first_data = 1;
  }
  if (first_data >= lines.size()) throw CsvError(first_data + 1, 1, "no design rows");

  std::vector<std::vector<int>> rows;
  std::size_t width = labels.empty() ? 0 : labels.size();
  for (std::size_t l = first_data; l < lines.size(); ++l) {
    const auto tokens = detail::split_commas(lines[l]);
    if (width == 0) width = tokens.size();
    if (tokens.size() != width)
      throw CsvError(l + 1, std::min(tokens.size(), width) + 1,
                     "ragged row: " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(width));
    std::vector<int> row;
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      if (tokens[c] == "+1")
        row.push_back(1);
      else if (tokens[c] == "-1")
        row.push_back(-1);
      else
        throw CsvError(l + 1, c + 1, "token '" + tokens[c] + "' is not +1 or -1");
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() > kMaxRuns) throw CsvError(first_data + kMaxRuns + 1, 1, "more than 64 runs");
  try {
    return SignMatrix::from_rows(rows, labels);
  } catch (const std::invalid_argument& e) {
    throw CsvError(1, 1, e.what());
  }
}

inline SignMatrix read_design_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_design_csv(in);
}

}  // namespace ssd
