#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssd/sign_matrix.hpp"

namespace ssd {

/// Construction limits. The order ceiling can be lowered but never raised
/// above kMaxRuns.
struct Limits {
  std::size_t max_order = 64;
};

namespace detail {

inline void check_order(std::size_t n, const Limits& limits) {
  const auto cap = std::min(limits.max_order, kMaxRuns);
  if (n > cap)
    throw std::out_of_range("Hadamard order " + std::to_string(n) + " exceeds maximum " +
                            std::to_string(cap));
}

inline SignMatrix square_from_dense(const std::vector<std::vector<int>>& rows) {
  std::vector<ColumnLabel> labels;
  for (std::size_t j = 0; j < rows.size(); ++j) labels.push_back(ColumnLabel::main(static_cast<int>(j)));
  return SignMatrix::from_rows(rows, std::move(labels));
}

// Legendre symbol of x modulo an odd prime p, by Euler's criterion.
inline int quadratic_character(long long x, long long p) {
  x %= p;
  if (x < 0) x += p;
  if (x == 0) return 0;
  long long result = 1, base = x, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

}  // namespace detail

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// True iff M is square and M * M^T = n I.
inline bool is_hadamard(const SignMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return false;
  const auto rows = m.dense_rows();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      long dot = 0;
      for (std::size_t c = 0; c < n; ++c) dot += rows[a][c] * rows[b][c];
      if (dot != (a == b ? static_cast<long>(n) : 0)) return false;
    }
  return true;
}

inline bool is_normalized(const SignMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(0, c) != 1) return false;
  return m.cols() > 0 && m.mask(0) == 0;
}

/// Sylvester doubling H_{2n} = [[H, H], [H, -H]], written in closed form:
/// entry (r, c) is -1 exactly when r & c has odd parity.
inline SignMatrix sylvester_hadamard(int k, const Limits& limits = {}) {
  if (k < 1) throw std::invalid_argument("Sylvester exponent must be >= 1");
  if (k > 6) throw std::out_of_range("Sylvester order 2^" + std::to_string(k) + " exceeds maximum");
  const std::size_t n = std::size_t{1} << k;
  detail::check_order(n, limits);
  std::vector<std::vector<int>> h(n, std::vector<int>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) h[r][c] = (std::popcount(r & c) % 2 == 0) ? 1 : -1;
  return detail::square_from_dense(h);
}

/// Negates columns so the first row is all +1, then rows so the first column
/// is all +1.
inline SignMatrix normalize(const SignMatrix& m) {
  if (!is_hadamard(m)) throw std::invalid_argument("normalize: input is not a Hadamard matrix");
  const std::size_t n = m.rows();
  const auto valid = row_mask(n);
  std::vector<SignColumn> cols(m.columns().begin(), m.columns().end());
  for (auto& c : cols)
    if (c.minus & 1U) c.minus = ~c.minus & valid;
  const std::uint64_t row_flip = cols.front().minus;
  for (auto& c : cols) c.minus ^= row_flip;
  return SignMatrix(n, std::move(cols));
}

/// Paley constructions from an odd prime p. p = 3 (mod 4) gives the type I
/// matrix of order p + 1; p = 1 (mod 4) gives the type II matrix of order
/// 2(p + 1). The result is normalized.
inline SignMatrix paley_hadamard(long long p, const Limits& limits = {}) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument("Paley construction needs an odd prime, got " + std::to_string(p));
  const bool type_one = p % 4 == 3;
  const std::size_t n = type_one ? static_cast<std::size_t>(p + 1) : static_cast<std::size_t>(2 * (p + 1));
  detail::check_order(n, limits);

  // Jacobsthal-bordered core of size p + 1: index 0 is the border.
  const std::size_t core = static_cast<std::size_t>(p + 1);
  auto bordered = [&](std::size_t i, std::size_t j, int border_col_sign) {
    if (i == 0 && j == 0) return 0;
    if (i == 0) return 1;
    if (j == 0) return border_col_sign;
    return detail::quadratic_character(static_cast<long long>(j) - static_cast<long long>(i), p);
  };

  std::vector<std::vector<int>> h(n, std::vector<int>(n));
  if (type_one) {
    // H = I + S with S skew-symmetric.
    for (std::size_t i = 0; i < core; ++i)
      for (std::size_t j = 0; j < core; ++j) h[i][j] = (i == j ? 1 : 0) + bordered(i, j, -1);
  } else {
    // Symmetric conference matrix C; H = C (x) [[1,1],[1,-1]] + I (x) [[1,-1],[-1,-1]].
    for (std::size_t i = 0; i < core; ++i)
      for (std::size_t j = 0; j < core; ++j) {
        const int c = bordered(i, j, 1);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            int v;
            if (i == j)
              v = (a == 0 && b == 0) ? 1 : -1;
            else
              v = c * ((a == 1 && b == 1) ? -1 : 1);
            h[2 * i + a][2 * j + b] = v;
          }
      }
  }
  return normalize(detail::square_from_dense(h));
}

/// Deletes the all-ones first column of a normalized Hadamard matrix, giving
/// the saturated design H(n, n-1) with columns c1..c(n-1).
inline SignMatrix to_hadamard_design(const SignMatrix& m) {
  if (m.cols() != m.rows() || m.cols() < 2)
    throw std::invalid_argument("to_hadamard_design: matrix must be square");
  if (m.mask(0) != 0) throw std::invalid_argument("to_hadamard_design: first column is not all +1");
  std::vector<SignColumn> cols;
  for (std::size_t c = 1; c < m.cols(); ++c)
    cols.push_back({ColumnLabel::main(static_cast<int>(c)), m.mask(c)});
  return SignMatrix(m.rows(), std::move(cols));
}

enum class Construction { Sylvester, Paley };

/// Picks the implemented construction reaching order n, preferring Sylvester
/// for powers of two.
inline std::optional<Construction> construction_for(std::size_t n) {
  if (n >= 2 && std::has_single_bit(n)) return Construction::Sylvester;
  if (n % 4 == 0 && is_prime(static_cast<long long>(n) - 1)) return Construction::Paley;
  if (n % 4 == 0 && is_prime(static_cast<long long>(n / 2) - 1) && (n / 2 - 1) % 4 == 1)
    return Construction::Paley;
  return std::nullopt;
}

/// Normalized Hadamard matrix of order n using the requested construction.
inline SignMatrix hadamard_of_order(std::size_t n, Construction how, const Limits& limits = {}) {
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("order n=" + std::to_string(n) + " is not 0 mod 4");
  detail::check_order(n, limits);
  if (how == Construction::Sylvester) {
    if (!std::has_single_bit(n)) throw std::invalid_argument("Sylvester needs a power of two, got n=" + std::to_string(n));
    return sylvester_hadamard(std::countr_zero(n), limits);
  }
  const auto p1 = static_cast<long long>(n) - 1;
  if (is_prime(p1) && p1 % 4 == 3) return paley_hadamard(p1, limits);
  const auto p2 = static_cast<long long>(n / 2) - 1;
  if (is_prime(p2) && p2 % 4 == 1) return paley_hadamard(p2, limits);
  throw std::invalid_argument("no Paley construction reaches n=" + std::to_string(n));
}

}  // namespace ssd
