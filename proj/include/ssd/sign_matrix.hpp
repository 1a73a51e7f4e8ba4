#pragma once

#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ssd {

/// Hard ceiling on run count: a column is packed into one 64-bit word.
inline constexpr std::size_t kMaxRuns = 64;

/// Provenance of a design column: a main effect c_i or an interaction c_i c_j
/// of the starting array. Indices are 1-based, matching the usual c1, c2, ...
/// naming; index 0 is reserved for the all-ones column of a Hadamard matrix.
class ColumnLabel {
 public:
  static ColumnLabel main(int i) { return ColumnLabel(i, 0); }

  static ColumnLabel interaction(int i, int j) {
    if (i == j) throw std::invalid_argument("interaction of a column with itself");
    if (i > j) std::swap(i, j);
    return ColumnLabel(i, j);
  }

  bool is_main() const noexcept { return second_ == 0; }
  bool is_interaction() const noexcept { return second_ != 0; }
  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

  bool involves(int index) const noexcept {
    return first_ == index || (is_interaction() && second_ == index);
  }

  std::string to_string() const {
    std::string s = "c" + std::to_string(first_);
    if (is_interaction()) s += "*c" + std::to_string(second_);
    return s;
  }

  /// Parses "c3" or "c1*c2" (also accepts "c2*c1").
  static std::optional<ColumnLabel> parse(std::string_view text) {
    auto parse_one = [](std::string_view t) -> std::optional<int> {
      if (t.size() < 2 || t[0] != 'c') return std::nullopt;
      int v = 0;
      auto [p, ec] = std::from_chars(t.data() + 1, t.data() + t.size(), v);
      if (ec != std::errc{} || p != t.data() + t.size() || v < 0) return std::nullopt;
      return v;
    };
    auto star = text.find('*');
    if (star == std::string_view::npos) {
      auto i = parse_one(text);
      if (!i) return std::nullopt;
      return main(*i);
    }
    auto i = parse_one(text.substr(0, star));
    auto j = parse_one(text.substr(star + 1));
    if (!i || !j || *i == *j || *i == 0 || *j == 0) return std::nullopt;
    return interaction(*i, *j);
  }

  friend auto operator<=>(const ColumnLabel&, const ColumnLabel&) = default;

 private:
  ColumnLabel(int a, int b) : first_(a), second_(b) {}
  int first_;
  int second_;
};

/// A single ±1 column of length n, bit-packed: bit r set means entry r is -1.
struct SignColumn {
  ColumnLabel label;
  std::uint64_t minus = 0;

  int entry(std::size_t r) const noexcept { return ((minus >> r) & 1U) ? -1 : 1; }
};

inline std::uint64_t row_mask(std::size_t n) {
  return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// Inner product of two packed columns of length n.
inline int inner_product(std::uint64_t a, std::uint64_t b, std::size_t n) {
  return static_cast<int>(n) - 2 * std::popcount(a ^ b);
}

/// Sum of a packed column of length n.
inline int column_sum(std::uint64_t a, std::size_t n) {
  return static_cast<int>(n) - 2 * std::popcount(a);
}

/// Entrywise product of two packed columns.
inline std::uint64_t product(std::uint64_t a, std::uint64_t b) { return a ^ b; }

/// n x q matrix with entries in {+1, -1} and one provenance label per column.
/// Immutable after construction.
class SignMatrix {
 public:
  SignMatrix() = default;

  SignMatrix(std::size_t rows, std::vector<SignColumn> columns)
      : rows_(rows), columns_(std::move(columns)) {
    if (rows_ == 0) throw std::invalid_argument("sign matrix needs at least one row");
    if (rows_ > kMaxRuns)
      throw std::out_of_range("sign matrix has " + std::to_string(rows_) +
                              " rows; at most 64 are supported");
    std::set<ColumnLabel> seen;
    const auto valid = row_mask(rows_);
    for (const auto& c : columns_) {
      if ((c.minus & ~valid) != 0) throw std::invalid_argument("column bits beyond row count");
      if (!seen.insert(c.label).second)
        throw std::invalid_argument("duplicate column label " + c.label.to_string());
    }
  }

  /// Builds from dense row-major entries; every entry must be +1 or -1.
  /// Without labels the columns are named c1..cq.
  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows,
                              std::vector<ColumnLabel> labels = {}) {
    if (rows.empty()) throw std::invalid_argument("sign matrix needs at least one row");
    const std::size_t q = rows.front().size();
    if (labels.empty())
      for (std::size_t j = 0; j < q; ++j) labels.push_back(ColumnLabel::main(static_cast<int>(j + 1)));
    if (labels.size() != q) throw std::invalid_argument("label count does not match column count");
    if (rows.size() > kMaxRuns) throw std::out_of_range("at most 64 rows are supported");
    std::vector<SignColumn> cols;
    cols.reserve(q);
    for (std::size_t j = 0; j < q; ++j) cols.push_back({labels[j], 0});
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != q) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < q; ++j) {
        const int v = rows[r][j];
        if (v == -1)
          cols[j].minus |= std::uint64_t{1} << r;
        else if (v != 1)
          throw std::invalid_argument("entry is neither +1 nor -1");
      }
    }
    return SignMatrix(rows.size(), std::move(cols));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  int operator()(std::size_t r, std::size_t c) const { return columns_.at(c).entry(r); }

  const SignColumn& column(std::size_t c) const { return columns_.at(c); }
  std::span<const SignColumn> columns() const noexcept { return columns_; }
  const ColumnLabel& label(std::size_t c) const { return columns_.at(c).label; }
  std::uint64_t mask(std::size_t c) const { return columns_.at(c).minus; }

  std::vector<std::uint64_t> masks() const {
    std::vector<std::uint64_t> m;
    m.reserve(columns_.size());
    for (const auto& c : columns_) m.push_back(c.minus);
    return m;
  }

  /// Position of the column carrying this label, if any.
  std::optional<std::size_t> find(const ColumnLabel& label) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (columns_[c].label == label) return c;
    return std::nullopt;
  }

  std::vector<std::vector<int>> dense_rows() const {
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols()));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols(); ++c) out[r][c] = columns_[c].entry(r);
    return out;
  }

  friend bool operator==(const SignMatrix& a, const SignMatrix& b) {
    if (a.rows_ != b.rows_ || a.columns_.size() != b.columns_.size()) return false;
    for (std::size_t c = 0; c < a.columns_.size(); ++c)
      if (a.columns_[c].label != b.columns_[c].label || a.columns_[c].minus != b.columns_[c].minus)
        return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SignColumn> columns_;
};

}  // namespace ssd
