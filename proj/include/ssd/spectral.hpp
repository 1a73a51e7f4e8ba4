#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ssd/design_ops.hpp"
#include "ssd/rational.hpp"
#include "ssd/sign_matrix.hpp"
#include "ssd/subsets.hpp"

namespace ssd {

/// Binary Krawtchouk polynomial P_i(j; q) = sum_k (-1)^k C(j,k) C(q-j, i-k).
inline std::int64_t krawtchouk(int i, int j, int q) {
  if (q < 0 || i < 0 || j < 0 || i > q || j > q)
    throw std::out_of_range("krawtchouk: need 0 <= i, j <= q");
  __int128 total = 0;
  for (int k = 0; k <= i; ++k) {
    const __int128 term = static_cast<__int128>(binomial(j, k)) * binomial(q - j, i - k);
    total += (k % 2 == 0) ? term : -term;
  }
  if (total > INT64_MAX || total < INT64_MIN) throw std::overflow_error("krawtchouk value overflows");
  return static_cast<std::int64_t>(total);
}

/// Row-pair distance distribution. E_j = counts[j] / n, where counts[j] is the
/// number of ordered row pairs (a row with itself included) at Hamming
/// distance j.
struct DistanceDistribution {
  std::size_t n = 0;
  std::size_t q = 0;
  std::vector<std::int64_t> counts;

  Rational E(std::size_t j) const {
    return Rational(counts.at(j), static_cast<std::int64_t>(n));
  }
};

inline DistanceDistribution distance_distribution(const SignMatrix& h) {
  DistanceDistribution dd{h.rows(), h.cols(), std::vector<std::int64_t>(h.cols() + 1, 0)};
  const auto masks = h.masks();
  for (std::size_t a = 0; a < h.rows(); ++a)
    for (std::size_t b = 0; b < h.rows(); ++b) {
      std::size_t dist = 0;
      for (auto m : masks) dist += ((m >> a) ^ (m >> b)) & 1U;
      ++dd.counts[dist];
    }
  return dd;
}

/// A^g_1 .. A^g_q; index 0 holds A^g_1.
struct GwpVector {
  std::vector<Rational> A;

  const Rational& operator[](std::size_t order) const { return A.at(order - 1); }
  std::size_t size() const noexcept { return A.size(); }
};

/// n^2 A^g_s computed from the distance distribution: sum_j P_s(j; q) counts_j.
/// This equals the integer sum of squared J-characteristics of order s.
inline std::int64_t scaled_gwp_entry(const DistanceDistribution& dd, int s) {
  __int128 total = 0;
  const int q = static_cast<int>(dd.q);
  for (int j = 0; j <= q; ++j)
    if (dd.counts[j] != 0) total += static_cast<__int128>(krawtchouk(s, j, q)) * dd.counts[j];
  if (total > INT64_MAX || total < INT64_MIN) throw std::overflow_error("GWP entry overflows");
  return static_cast<std::int64_t>(total);
}

/// A^g_i = (1/n) sum_j P_i(j; q) E_j for i = 1..max_order (default q).
inline GwpVector gwp_via_krawtchouk(const SignMatrix& h, std::optional<std::size_t> max_order = std::nullopt) {
  const auto dd = distance_distribution(h);
  const std::size_t top = std::min(max_order.value_or(h.cols()), h.cols());
  const auto n = static_cast<__int128>(h.rows());
  GwpVector g;
  for (std::size_t s = 1; s <= top; ++s)
    g.A.push_back(make_rational(scaled_gwp_entry(dd, static_cast<int>(s)), n * n));
  return g;
}

namespace detail {

inline void check_subset(const SignMatrix& h, std::span<const std::size_t> subset) {
  if (subset.empty()) throw std::invalid_argument("column subset is empty");
  std::set<std::size_t> seen;
  for (auto c : subset) {
    if (c >= h.cols()) throw std::out_of_range("column index " + std::to_string(c) + " out of range");
    if (!seen.insert(c).second) throw std::invalid_argument("column subset has repeated index");
  }
}

inline std::int64_t square_of_j(std::uint64_t product_mask, std::size_t n) {
  const std::int64_t j = column_sum(product_mask, n);
  return j * j;
}

}  // namespace detail

/// J_s(S): sum over runs of the product of the entries in the columns of S.
inline int j_characteristic(const SignMatrix& h, std::span<const std::size_t> subset) {
  detail::check_subset(h, subset);
  std::uint64_t acc = 0;
  for (auto c : subset) acc ^= h.mask(c);
  return column_sum(acc, h.rows());
}

inline int j_characteristic(const SignMatrix& h, std::initializer_list<std::size_t> subset) {
  return j_characteristic(h, std::span<const std::size_t>(subset.begin(), subset.size()));
}

/// Sum of J_s(S)^2 over every s-subset S of columns; exhaustive.
inline std::int64_t sum_j_squared(const SignMatrix& h, std::size_t s, unsigned workers = 1) {
  if (s < 1 || s > h.cols()) throw std::out_of_range("sum_j_squared: need 1 <= s <= q");
  const auto masks = h.masks();
  const auto n = h.rows();
  return reduce_subset_products(masks, s, 0,
                                [n](std::uint64_t x) { return detail::square_of_j(x, n); }, workers);
}

/// Sum of J_s(S)^2 over the s-subsets S that contain every column in `fixed`
/// (one or two positions).
inline std::int64_t sum_j_squared_filtered(const SignMatrix& h, std::size_t s,
                                           std::span<const std::size_t> fixed) {
  detail::check_subset(h, fixed);
  if (fixed.size() > 2) throw std::invalid_argument("sum_j_squared_filtered: at most two fixed columns");
  if (s <= fixed.size() || s > h.cols()) throw std::out_of_range("sum_j_squared_filtered: order too small");
  std::uint64_t base = 0;
  std::vector<std::uint64_t> pool;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    if (std::find(fixed.begin(), fixed.end(), c) != fixed.end())
      base ^= h.mask(c);
    else
      pool.push_back(h.mask(c));
  }
  const auto n = h.rows();
  return reduce_subset_products(pool, s - fixed.size(), base,
                                [n](std::uint64_t x) { return detail::square_of_j(x, n); });
}

inline std::int64_t sum_j_squared_filtered(const SignMatrix& h, std::size_t s,
                                           std::initializer_list<std::size_t> fixed) {
  return sum_j_squared_filtered(h, s, std::span<const std::size_t>(fixed.begin(), fixed.size()));
}

/// All J-characteristics of one order, with the per-subset values kept on
/// request (lexicographic subset order).
struct JSummary {
  std::size_t order = 0;
  std::int64_t total_sq = 0;
  std::optional<std::vector<std::pair<std::vector<std::size_t>, int>>> per_subset;
};

inline JSummary j_summary(const SignMatrix& h, std::size_t s, bool keep_subsets = false) {
  if (s < 1 || s > h.cols()) throw std::out_of_range("j_summary: need 1 <= s <= q");
  JSummary out{s, 0, std::nullopt};
  if (!keep_subsets) {
    out.total_sq = sum_j_squared(h, s);
    return out;
  }
  out.per_subset.emplace();
  for_each_combination(h.cols(), s, [&](std::span<const std::size_t> subset) {
    const int j = j_characteristic(h, subset);
    out.total_sq += static_cast<std::int64_t>(j) * j;
    out.per_subset->emplace_back(std::vector<std::size_t>(subset.begin(), subset.end()), j);
  });
  return out;
}

/// Number of I=ABC half-fraction replicates among the rows of three columns:
/// d = (n + J_3) / 8, required to be an integer in [0, n/4].
inline int d_parameter(std::uint64_t t1, std::uint64_t t2, std::uint64_t t3, std::size_t n) {
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("d_parameter: n must be a positive multiple of 4");
  const int j3 = column_sum(t1 ^ t2 ^ t3, n);
  const int num = static_cast<int>(n) + j3;
  if (num % 8 != 0 || num < 0 || num / 8 > static_cast<int>(n / 4))
    throw std::domain_error("d_parameter: (n + J3) / 8 = " + std::to_string(num) +
                            "/8 is not an integer in [0, n/4]");
  return num / 8;
}

inline int d_parameter(const SignColumn& a, const SignColumn& b, const SignColumn& c, std::size_t n) {
  return d_parameter(a.minus, b.minus, c.minus, n);
}

/// The triple-based decompositions of the order-3 and order-4 sums when
/// columns are peeled off a parent array:
///   (1) S3(P)  = S3(P - i0) + S3(P; i0)
///   (2) S3(P)  = S3(P - i0) + S3(P; i0, j0) + S3(P - j0; i0)
///   (3) S4(P)  = S4(P - i0) + S4(P; i0)
///   (4) S4(P)  = S4(P - i0) + S4(P; i0, j0) + S4(P - j0; i0)
/// where S_s(A; F) sums J_s^2 over the s-subsets of A containing F.
/// With a single removed column i0, (2) and (4) are checked for every other
/// column j0; with two removed columns they use that pair.
inline bool verify_recursions(const SignMatrix& parent, const std::vector<std::size_t>& removed) {
  if (removed.empty()) return true;
  if (removed.size() > 2) throw std::invalid_argument("verify_recursions: remove one or two columns");
  for (auto c : removed)
    if (c >= parent.cols()) throw std::out_of_range("verify_recursions: index out of range");
  if (removed.size() == 2 && removed[0] == removed[1])
    throw std::invalid_argument("verify_recursions: repeated column");
  if (parent.cols() < 4) throw std::invalid_argument("verify_recursions: parent needs at least 4 columns");

  const std::size_t i0 = removed.front();
  const auto without_i0 = drop_columns(parent, {i0}).kept;
  const std::int64_t s3 = sum_j_squared(parent, 3), s4 = sum_j_squared(parent, 4);
  const std::int64_t s3_minus = sum_j_squared(without_i0, 3), s4_minus = sum_j_squared(without_i0, 4);
  const std::int64_t s3_i0 = sum_j_squared_filtered(parent, 3, {i0});
  const std::int64_t s4_i0 = sum_j_squared_filtered(parent, 4, {i0});
  if (s3 != s3_minus + s3_i0 || s4 != s4_minus + s4_i0) return false;

  auto pair_identities = [&](std::size_t j0) {
    const auto without_j0 = drop_columns(parent, {j0}).kept;
    const std::size_t i0_in = *without_j0.find(parent.label(i0));
    const std::int64_t s3_pair = sum_j_squared_filtered(parent, 3, {i0, j0});
    const std::int64_t s4_pair = sum_j_squared_filtered(parent, 4, {i0, j0});
    const std::int64_t s3_rest = sum_j_squared_filtered(without_j0, 3, {i0_in});
    const std::int64_t s4_rest = sum_j_squared_filtered(without_j0, 4, {i0_in});
    return s3 == s3_minus + s3_pair + s3_rest && s4 == s4_minus + s4_pair + s4_rest;
  };
  if (removed.size() == 2) return pair_identities(removed[1]);
  for (std::size_t j0 = 0; j0 < parent.cols(); ++j0)
    if (j0 != i0 && !pair_identities(j0)) return false;
  return true;
}

}  // namespace ssd
