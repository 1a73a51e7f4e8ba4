#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssd/design_ops.hpp"
#include "ssd/lemmas.hpp"
#include "ssd/rational.hpp"
#include "ssd/spectral.hpp"
#include "ssd/wu_builder.hpp"

namespace ssd {

/// Sum over column pairs i < j of s_ij^2, s_ij the inner product of columns.
inline std::int64_t sum_offdiagonal_squares(const SignMatrix& x) {
  std::int64_t total = 0;
  const auto masks = x.masks();
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      const std::int64_t s = inner_product(masks[i], masks[j], x.rows());
      total += s * s;
    }
  return total;
}

/// Average of the squared off-diagonal entries of X^T X.
inline Rational es2_direct(const SignMatrix& x) {
  const auto m = static_cast<std::int64_t>(x.cols());
  if (m < 2) throw std::invalid_argument("E(s^2) needs at least two columns");
  return make_rational(static_cast<__int128>(2) * sum_offdiagonal_squares(x), static_cast<__int128>(m) * (m - 1));
}

/// E(s^2) of a build from the J-characteristics of its starting array. Each
/// order-3 and order-4 J value of the start shows up six times among the
/// off-diagonal cells of the full augmentation; J_1 and J_2 vanish because
/// the start has strength 2.
inline Rational es2_via_j(const SsdBuild& b) {
  const auto& h = b.start.array;
  const auto m = static_cast<std::int64_t>(b.design.cols());
  auto pos = [&](int label) { return *h.find(ColumnLabel::main(label)); };
  __int128 total = 0;
  switch (b.family.index()) {
    case 0: total = 6 * static_cast<__int128>(sum_j_squared(h, 3)) + 6 * static_cast<__int128>(sum_j_squared(h, 4)); break;
    case 1: {
      const auto& del = std::get<MinusOne>(b.family).deleted;
      total = 6 * static_cast<__int128>(sum_j_squared(h, 3)) + 6 * static_cast<__int128>(sum_j_squared(h, 4));
      if (del.is_main()) {
        total -= 2 * static_cast<__int128>(sum_j_squared_filtered(h, 3, {pos(del.first())}));
      } else {
        const std::size_t a = pos(del.first()), c = pos(del.second());
        total -= 2 * static_cast<__int128>(sum_j_squared_filtered(h, 3, {a, c}));
        total -= 2 * static_cast<__int128>(sum_j_squared_filtered(h, 4, {a, c}));
      }
      break;
    }
    case 2: total = 6 * static_cast<__int128>(sum_j_squared(h, 4)); break;
    default:
      total = 4 * static_cast<__int128>(sum_j_squared_filtered(h, 3, {pos(std::get<SingleParent>(b.family).parent)}));
  }
  return make_rational(total, static_cast<__int128>(m) * (m - 1));
}

/// m = a (n-1) + sign r with a >= 1 and 0 <= r <= n/2.
struct Decomposition {
  std::int64_t a = 0;
  std::int64_t r = 0;
  int sign = 1;
  std::int64_t D = 0;
  int r_mod4 = 0;
};

/// D(n, r) of the Das et al. bound, by r mod 4.
inline std::int64_t D_of(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n / 2) throw std::out_of_range("D_of: need 0 <= r <= n/2");
  switch (r % 4) {
    case 0: return 4 * r;
    case 1: return n + 2 * r - 3;
    case 2: return 2 * n - 4;
    default: return n + 2 * r + 1;
  }
}

/// Every decomposition of m, smaller r first (at most two exist).
inline std::vector<Decomposition> decompose_m(std::int64_t n, std::int64_t m) {
  if (n <= 0 || n % 4 != 0) throw std::invalid_argument("decompose_m: n must be a positive multiple of 4");
  if (m < 1) throw std::invalid_argument("decompose_m: m must be >= 1");
  std::vector<Decomposition> out;
  const std::int64_t k = n - 1;
  for (std::int64_t a = 1; a * k <= m + n / 2; ++a) {
    const std::int64_t diff = m - a * k;
    const std::int64_t r = diff < 0 ? -diff : diff;
    if (r > n / 2) continue;
    out.push_back({a, r, diff < 0 ? -1 : 1, D_of(n, r), static_cast<int>(r % 4)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.r < y.r; });
  return out;
}

/// Bound value for one decomposition:
/// n^2 (m-n+1) / ((n-1)(m-1)) + n / (m(m-1)) * (D(n,r) - r^2/(n-1)).
inline Rational bound_for(std::int64_t n, std::int64_t m, const Decomposition& dec) {
  const __int128 N = n, M = m;
  // Common denominator (n-1) m (m-1).
  const __int128 num = N * N * (M - N + 1) * M + N * (dec.D * (N - 1) - static_cast<__int128>(dec.r) * dec.r);
  return make_rational(num, (N - 1) * M * (M - 1));
}

struct BoundResult {
  Rational value;
  Decomposition tightest;
  std::vector<Decomposition> all;
};

/// Das et al. lower bound on E(s^2) for balanced n-run designs with m columns,
/// maximized over the decompositions of m.
inline BoundResult lower_bound_detail(std::int64_t n, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("lower_bound: m must be >= 2");
  auto decs = decompose_m(n, m);
  if (decs.empty())
    throw std::domain_error("lower_bound: m=" + std::to_string(m) + " has no decomposition a(n-1) +/- r for n=" +
                            std::to_string(n));
  BoundResult best{bound_for(n, m, decs.front()), decs.front(), decs};
  for (const auto& d : decs) {
    const auto v = bound_for(n, m, d);
    if (v > best.value) {
      best.value = v;
      best.tightest = d;
    }
  }
  return best;
}

inline Rational lower_bound(std::int64_t n, std::int64_t m) { return lower_bound_detail(n, m).value; }

/// E(s^2) of a construction from the closed-form J sums. Returns nullopt for a
/// (family, q) combination outside the covered cases or when the formula
/// needs d and none was supplied.
inline std::optional<Rational> es2_closed_form(const SsdFamily& family, std::int64_t n, std::int64_t q,
                                               std::optional<int> d = std::nullopt) {
  const std::int64_t k = n - 1 - q;  // columns deleted from H(n, n-1)
  if (k < 0 || k > 2) return std::nullopt;
  using closed_form::specific_column_sum;
  using closed_form::whole_array_sum;
  const std::int64_t m = static_cast<std::int64_t>(expected_columns(family, static_cast<std::size_t>(q)));
  const Rational denom(m * (m - 1));
  const Rational s3 = whole_array_sum(static_cast<int>(1 + k), n), s4 = whole_array_sum(static_cast<int>(5 + k), n);
  const bool needs_d_single = k == 2;  // items 3 and 8
  const bool needs_d_pair = k == 1;    // items 5 and 10
  try {
    switch (family.index()) {
      case 0: return (6 * s3 + 6 * s4) / denom;
      case 1: {
        if (k == 2) return std::nullopt;
        const auto& del = std::get<MinusOne>(family).deleted;
        if (del.is_main()) return (6 * s3 + 6 * s4 - 2 * specific_column_sum(static_cast<int>(1 + k), n)) / denom;
        if (needs_d_pair && !d) return std::nullopt;
        const Rational t3 = specific_column_sum(k == 0 ? 4 : 5, n, d);
        const Rational t4 = specific_column_sum(k == 0 ? 9 : 10, n, d);
        return (6 * s3 + 6 * s4 - 2 * t3 - 2 * t4) / denom;
      }
      case 2: return 6 * s4 / denom;
      default:
        if (needs_d_single && !d) return std::nullopt;
        return 4 * specific_column_sum(static_cast<int>(1 + k), n, d) / denom;
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

struct OptimalityReport {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<Decomposition> decompositions;
  std::optional<Decomposition> tightest;
  std::optional<Rational> lower_bound;
  Rational es2;
  std::optional<Rational> gap;
  bool optimal = false;
  std::optional<SsdFamily> family;
  std::optional<int> d;
  std::optional<Rational> closed_form;
  std::vector<AliasedPair> aliased_pairs;
  std::vector<std::string> notes;
};

/// E(s^2), bound and aliasing for an arbitrary design. The bound is reported
/// when n = 0 (mod 4) and m admits a decomposition.
inline OptimalityReport assess(const SignMatrix& x) {
  OptimalityReport rep;
  rep.n = static_cast<std::int64_t>(x.rows());
  rep.m = static_cast<std::int64_t>(x.cols());
  rep.es2 = es2_direct(x);
  rep.aliased_pairs = aliasing_report(x);
  if (rep.n % 4 == 0) {
    rep.decompositions = decompose_m(rep.n, rep.m);
    if (!rep.decompositions.empty()) {
      const auto b = lower_bound_detail(rep.n, rep.m);
      rep.lower_bound = b.value;
      rep.tightest = b.tightest;
      rep.gap = rep.es2 - b.value;
      rep.optimal = rep.gap->numerator() == 0;
    } else {
      rep.notes.push_back("m has no decomposition a(n-1) +/- r with a >= 1; no bound");
    }
  } else {
    rep.notes.push_back("n is not a multiple of 4; no bound");
  }
  if (!is_balanced(x)) rep.notes.push_back("design is not balanced; the bound assumes balanced columns");
  if (!rep.aliased_pairs.empty())
    rep.notes.push_back(std::to_string(rep.aliased_pairs.size()) +
                        " fully aliased column pair(s); the partial-aliasing precondition fails");
  return rep;
}

/// Report for a build, cross-checked against the closed form when covered.
inline OptimalityReport verdict(const SsdBuild& b) {
  auto rep = assess(b.design);
  rep.family = b.family;
  rep.d = b.d;
  rep.closed_form = es2_closed_form(b.family, rep.n, static_cast<std::int64_t>(b.start.array.cols()), b.d);
  if (rep.closed_form && *rep.closed_form != rep.es2)
    rep.notes.push_back("closed form " + to_string(*rep.closed_form) + " disagrees with direct E(s^2) " +
                        to_string(rep.es2));
  return rep;
}

}  // namespace ssd
