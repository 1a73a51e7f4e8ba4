#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssd/rational.hpp"

// Closed forms for sums of squared J-characteristics of saturated two-level
// orthogonal arrays H(n, n-1) and the arrays left after deleting up to three
// columns. These are claims under test; exhaustive enumeration in
// spectral.hpp is the reference they are checked against.

namespace ssd::closed_form {

namespace detail {

inline std::int64_t d_term(std::int64_t n, std::int64_t d) { return 16 * d * (n - 4 * d); }

inline std::int64_t need_d(std::optional<int> d, const char* what) {
  if (!d) throw std::invalid_argument(std::string(what) + " needs the d parameter");
  return *d;
}

}  // namespace detail

/// Whole-array sums. Items 1-4: order 3 on q = n-1 .. n-4 columns; items 5-8:
/// order 4 on the same arrays. Items 4 and 8 depend on d of the removed triple.
inline Rational whole_array_sum(int item, std::int64_t n, std::optional<int> d = std::nullopt) {
  const __int128 n2 = static_cast<__int128>(n) * n;
  switch (item) {
    case 1: return make_rational(n2 * (n - 1) * (n - 2), 6);
    case 2: return make_rational(n2 * (n - 2) * (n - 4), 6);
    case 3: return make_rational(n2 * (n - 4) * (n - 5), 6);
    case 4: {
      const auto dd = detail::need_d(d, "whole-array item 4");
      return make_rational(n2 * (n - 4) * (n - 8) + 6 * detail::d_term(n, dd), 6);
    }
    case 5: return make_rational(n2 * (n - 1) * (n - 2) * (n - 4), 24);
    case 6: return make_rational(n2 * (n - 2) * (n - 4) * (n - 5), 24);
    case 7: return make_rational(n2 * (n - 4) * (n - 5) * (n - 6), 24);
    case 8: {
      const auto dd = detail::need_d(d, "whole-array item 8");
      return make_rational(n2 * (n - 4) * (n * n - 15 * n + 62) - 24 * detail::d_term(n, dd), 24);
    }
    default: throw std::out_of_range("whole-array item must be 1..8");
  }
}

/// Which array and which order a whole-array item refers to.
struct WholeArrayItem {
  int item;
  int removed;  // columns deleted from H(n, n-1)
  int order;
  bool uses_d;
};

inline constexpr std::array<WholeArrayItem, 8> kWholeArrayItems{{
    {1, 0, 3, false}, {2, 1, 3, false}, {3, 2, 3, false}, {4, 3, 3, true},
    {5, 0, 4, false}, {6, 1, 4, false}, {7, 2, 4, false}, {8, 3, 4, true},
}};

/// Sums restricted to subsets through one specific column c_i0 (or two, c_i0
/// and c_j0). The d-dependent items take d from the triple made of the
/// columns removed from H(n, n-1) followed by c_i0, then c_j0, truncated to
/// three columns.
inline Rational specific_column_sum(int item, std::int64_t n, std::optional<int> d = std::nullopt) {
  const __int128 n2 = static_cast<__int128>(n) * n;
  switch (item) {
    case 1: return make_rational(n2 * (n - 2), 2);
    case 2: return make_rational(n2 * (n - 4), 2);
    case 3: return make_rational(n2 * (n - 4) - 2 * detail::d_term(n, detail::need_d(d, "item 3")), 2);
    case 4: return make_rational(n2, 1);
    case 5: return make_rational(detail::d_term(n, detail::need_d(d, "item 5")), 1);
    case 6: return make_rational(n2 * (n - 2) * (n - 4), 6);
    case 7: return make_rational(n2 * (n - 4) * (n - 5), 6);
    case 8: return make_rational(n2 * (n - 4) * (n - 8) + 6 * detail::d_term(n, detail::need_d(d, "item 8")), 6);
    case 9: return make_rational(n2 * (n - 4), 2);
    case 10: return make_rational(n2 * (n - 4) - 2 * detail::d_term(n, detail::need_d(d, "item 10")), 2);
    default: throw std::out_of_range("specific-column item must be 1..10");
  }
}

struct SpecificColumnItem {
  int item;
  int removed;
  int order;
  int fixed;  // 1: c_i0 only, 2: c_i0 and c_j0
  bool uses_d;
};

inline constexpr std::array<SpecificColumnItem, 10> kSpecificColumnItems{{
    {1, 0, 3, 1, false}, {2, 1, 3, 1, false}, {3, 2, 3, 1, true}, {4, 0, 3, 2, false},
    {5, 1, 3, 2, true},  {6, 0, 4, 1, false}, {7, 1, 4, 1, false}, {8, 2, 4, 1, true},
    {9, 0, 4, 2, false}, {10, 1, 4, 2, true},
}};

/// Distance distribution of H(n, n-k) as counts of ordered row pairs
/// (n * E_j), indexed by distance j. k is the number of deleted columns; k = 3
/// needs d of the removed triple.
inline std::vector<Rational> distance_counts(std::int64_t n, int k, std::optional<int> d = std::nullopt) {
  const std::int64_t q = n - 1 - k;
  std::vector<Rational> e(static_cast<std::size_t>(q + 1), Rational(0));
  auto at = [&](std::int64_t j) -> Rational& { return e.at(static_cast<std::size_t>(j)); };
  switch (k) {
    case 0:
      at(0) = 1;
      at(n / 2) = n - 1;
      break;
    case 1:
      at(0) = 1;
      at((n - 2) / 2) = Rational(n, 2);
      at(n / 2) = Rational(n - 2, 2);
      break;
    case 2:
      at(0) = 1;
      at((n - 4) / 2) = Rational(n, 4);
      at((n - 2) / 2) = Rational(n, 2);
      at(n / 2) = Rational(n - 4, 4);
      break;
    case 3: {
      const std::int64_t dd = detail::need_d(d, "distance distribution after three deletions");
      at(0) = 1;
      at((n - 6) / 2) = Rational(2 * dd * (n - 4 * dd), n);
      at((n - 4) / 2) = Rational(96 * dd * dd - 24 * dd * n + 3 * n * n, 4 * n);
      at((n - 2) / 2) = Rational(6 * dd * (n - 4 * dd), n);
      at(n / 2) = Rational(8 * dd * (4 * dd - n) + n * (n - 4), 4 * n);
      break;
    }
    default: throw std::out_of_range("distance_counts: k must be 0..3");
  }
  for (auto& v : e) v *= n;
  return e;
}

/// One closed-form Krawtchouk evaluation P_order(point(n); n - offset).
struct KrawtchoukForm {
  int offset;
  int order;
  std::string point_text;
  std::string value_text;
  std::int64_t (*point)(std::int64_t n);
  Rational (*value)(std::int64_t n);
};

/// Krawtchouk values at the distances occurring in H(n, n-1) and its column
/// deletions. The (n/2; n-3) order-3 entry is (3n - 20)/2.
inline std::vector<KrawtchoukForm> krawtchouk_forms() {
  using R = Rational;
  return {
      {1, 3, "0", "(n-3)(n-2)(n-1)/6", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 3) * (n - 2) * (n - 1), 6); }},
      {1, 3, "n/2", "(n-2)/2", [](std::int64_t n) { return n / 2; }, [](std::int64_t n) { return R(n - 2, 2); }},
      {1, 4, "0", "(n-4)(n-3)(n-2)(n-1)/24", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 4) * (n - 3) * (n - 2) * (n - 1), 24); }},
      {1, 4, "n/2", "(n-4)(n-2)/8", [](std::int64_t n) { return n / 2; },
       [](std::int64_t n) { return R((n - 4) * (n - 2), 8); }},

      {2, 3, "0", "(n-4)(n-3)(n-2)/6", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 4) * (n - 3) * (n - 2), 6); }},
      {2, 3, "(n-2)/2", "0", [](std::int64_t n) { return (n - 2) / 2; }, [](std::int64_t) { return R(0); }},
      {2, 3, "n/2", "n-4", [](std::int64_t n) { return n / 2; }, [](std::int64_t n) { return R(n - 4); }},
      {2, 4, "0", "(n-5)(n-4)(n-3)(n-2)/24", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 5) * (n - 4) * (n - 3) * (n - 2), 24); }},
      {2, 4, "(n-2)/2", "(n-4)(n-2)/8", [](std::int64_t n) { return (n - 2) / 2; },
       [](std::int64_t n) { return R((n - 4) * (n - 2), 8); }},
      {2, 4, "n/2", "(n-10)(n-4)/8", [](std::int64_t n) { return n / 2; },
       [](std::int64_t n) { return R((n - 10) * (n - 4), 8); }},

      {3, 3, "0", "(n-5)(n-4)(n-3)/6", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 5) * (n - 4) * (n - 3), 6); }},
      {3, 3, "(n-4)/2", "(4-n)/2", [](std::int64_t n) { return (n - 4) / 2; },
       [](std::int64_t n) { return R(4 - n, 2); }},
      {3, 3, "(n-2)/2", "(n-4)/2", [](std::int64_t n) { return (n - 2) / 2; },
       [](std::int64_t n) { return R(n - 4, 2); }},
      {3, 3, "n/2", "(3n-20)/2", [](std::int64_t n) { return n / 2; },
       [](std::int64_t n) { return R(3 * n - 20, 2); }},
      {3, 4, "0", "(n-6)(n-5)(n-4)(n-3)/24", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 6) * (n - 5) * (n - 4) * (n - 3), 24); }},
      {3, 4, "(n-4)/2", "(n-6)(n-4)/8", [](std::int64_t n) { return (n - 4) / 2; },
       [](std::int64_t n) { return R((n - 6) * (n - 4), 8); }},
      {3, 4, "(n-2)/2", "(n-6)(n-4)/8", [](std::int64_t n) { return (n - 2) / 2; },
       [](std::int64_t n) { return R((n - 6) * (n - 4), 8); }},
      {3, 4, "n/2", "(n-20)(n-6)/8", [](std::int64_t n) { return n / 2; },
       [](std::int64_t n) { return R((n - 20) * (n - 6), 8); }},

      {4, 3, "0", "(n-6)(n-5)(n-4)/6", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 6) * (n - 5) * (n - 4), 6); }},
      {4, 3, "(n-6)/2", "6-n", [](std::int64_t n) { return (n - 6) / 2; }, [](std::int64_t n) { return R(6 - n); }},
      {4, 3, "(n-4)/2", "0", [](std::int64_t n) { return (n - 4) / 2; }, [](std::int64_t) { return R(0); }},
      {4, 3, "(n-2)/2", "n-6", [](std::int64_t n) { return (n - 2) / 2; }, [](std::int64_t n) { return R(n - 6); }},
      {4, 3, "n/2", "2(n-10)", [](std::int64_t n) { return n / 2; }, [](std::int64_t n) { return R(2 * (n - 10)); }},
      {4, 4, "0", "(n-7)(n-6)(n-5)(n-4)/24", [](std::int64_t) -> std::int64_t { return 0; },
       [](std::int64_t n) { return R((n - 7) * (n - 6) * (n - 5) * (n - 4), 24); }},
      {4, 4, "(n-6)/2", "(n-6)(n-12)/8", [](std::int64_t n) { return (n - 6) / 2; },
       [](std::int64_t n) { return R((n - 6) * (n - 12), 8); }},
      {4, 4, "(n-4)/2", "(n-6)(n-4)/8", [](std::int64_t n) { return (n - 4) / 2; },
       [](std::int64_t n) { return R((n - 6) * (n - 4), 8); }},
      {4, 4, "(n-2)/2", "(n-6)(n-12)/8", [](std::int64_t n) { return (n - 2) / 2; },
       [](std::int64_t n) { return R((n - 6) * (n - 12), 8); }},
      {4, 4, "n/2", "(n^2-42n+280)/8", [](std::int64_t n) { return n / 2; },
       [](std::int64_t n) { return R(n * n - 42 * n + 280, 8); }},
  };
}

}  // namespace ssd::closed_form
