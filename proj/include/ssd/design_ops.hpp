#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssd/sign_matrix.hpp"

namespace ssd {

/// Result of deleting columns: the kept array plus the removed columns, in
/// ascending position order, with their labels.
struct DropResult {
  SignMatrix kept;
  SignMatrix removed;  // zero columns when nothing was dropped
};

inline DropResult drop_columns(const SignMatrix& h, const std::vector<std::size_t>& indices) {
  std::set<std::size_t> drop;
  for (auto i : indices) {
    if (i >= h.cols()) throw std::out_of_range("drop_columns: index " + std::to_string(i) + " out of range");
    if (!drop.insert(i).second) throw std::invalid_argument("drop_columns: repeated index " + std::to_string(i));
  }
  std::vector<SignColumn> kept, removed;
  for (std::size_t c = 0; c < h.cols(); ++c) (drop.count(c) ? removed : kept).push_back(h.column(c));
  return {SignMatrix(h.rows(), std::move(kept)), SignMatrix(h.rows(), std::move(removed))};
}

/// Entrywise product of columns i and j (positions), labeled by their labels.
/// Both columns must be main effects.
inline SignColumn interaction_column(const SignMatrix& h, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("interaction_column: i == j");
  if (i >= h.cols() || j >= h.cols()) throw std::out_of_range("interaction_column: index out of range");
  const auto& a = h.column(i);
  const auto& b = h.column(j);
  if (!a.label.is_main() || !b.label.is_main())
    throw std::invalid_argument("interaction_column: parents must be main-effect columns");
  return {ColumnLabel::interaction(a.label.first(), b.label.first()), product(a.minus, b.minus)};
}

inline bool is_balanced(const SignMatrix& h) {
  for (const auto& c : h.columns())
    if (column_sum(c.minus, h.rows()) != 0) return false;
  return true;
}

/// Strength-2 orthogonal array check: every column pair shows each of the four
/// sign combinations exactly n/4 times.
inline bool verify_oa_strength2(const SignMatrix& h) {
  const std::size_t n = h.rows();
  if (n % 4 != 0) return false;
  const auto quarter = static_cast<int>(n / 4);
  const auto valid = row_mask(n);
  for (std::size_t i = 0; i < h.cols(); ++i)
    for (std::size_t j = i + 1; j < h.cols(); ++j) {
      const auto a = h.mask(i), b = h.mask(j);
      const int mm = std::popcount(a & b);
      const int mp = std::popcount(a & ~b & valid);
      const int pm = std::popcount(~a & b & valid);
      const int pp = std::popcount(~a & ~b & valid);
      if (mm != quarter || mp != quarter || pm != quarter || pp != quarter) return false;
    }
  if (h.cols() == 1) return column_sum(h.mask(0), n) == 0;
  return true;
}

struct AliasedPair {
  std::size_t first;
  std::size_t second;
  ColumnLabel first_label;
  ColumnLabel second_label;
  int inner;  // +n or -n
};

/// All column pairs that are equal up to sign. Empty means every pair is at
/// most partially aliased.
inline std::vector<AliasedPair> aliasing_report(const SignMatrix& x) {
  std::vector<AliasedPair> out;
  const int n = static_cast<int>(x.rows());
  for (std::size_t i = 0; i < x.cols(); ++i)
    for (std::size_t j = i + 1; j < x.cols(); ++j) {
      const int s = inner_product(x.mask(i), x.mask(j), x.rows());
      if (s == n || s == -n) out.push_back({i, j, x.label(i), x.label(j), s});
    }
  return out;
}

}  // namespace ssd
