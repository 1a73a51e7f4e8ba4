#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssd/es2.hpp"
#include "ssd/hadamard.hpp"
#include "ssd/lemmas.hpp"
#include "ssd/spectral.hpp"
#include "ssd/subsets.hpp"
#include "ssd/wu_builder.hpp"

namespace ssd {

/// Saturated design H(n, n-1) from the requested (or default) construction.
inline SignMatrix saturated_design(std::size_t n, std::optional<Construction> how = std::nullopt) {
  const auto c = how ? how : construction_for(n);
  if (!c) throw std::invalid_argument("no implemented Hadamard construction reaches n=" + std::to_string(n));
  return to_hadamard_design(hadamard_of_order(n, *c));
}

/// Deletion sets of size k from q columns in lexicographic order. With a cap,
/// an evenly spaced deterministic sample of at most `cap` sets is returned.
inline std::vector<std::vector<std::size_t>> deletion_sets(std::size_t q, std::size_t k,
                                                           std::optional<std::size_t> cap = std::nullopt) {
  std::vector<std::vector<std::size_t>> all;
  for_each_combination(q, k, [&](std::span<const std::size_t> s) { all.emplace_back(s.begin(), s.end()); });
  if (!cap || all.size() <= *cap) return all;
  std::vector<std::vector<std::size_t>> sample;
  for (std::size_t i = 0; i < *cap; ++i) sample.push_back(all[i * all.size() / *cap]);
  return sample;
}

/// Tally for one closed-form claim across every instance it was checked on.
struct CheckTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  bool ok() const { return failed == 0; }

  void record(bool pass, const std::string& context) {
    ++checked;
    if (!pass && failed++ == 0) first_failure = context;
  }
};

namespace detail {

inline std::string set_text(const SignMatrix& from, const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + from.label(idx[i]).to_string();
  return s + "}";
}

inline std::string mismatch(const std::string& ctx, std::int64_t got, const Rational& want) {
  return ctx + ": enumeration " + std::to_string(got) + " vs closed form " + to_string(want);
}

}  // namespace detail

struct LemmaOptions {
  std::optional<std::size_t> cap;  // deletion sets per size, nullopt = exhaustive
  bool specific_columns = true;
};

/// Checks every whole-array and specific-column closed form against
/// exhaustive J enumeration, for every deletion set of 0..3 columns (0..2 for
/// the specific-column forms). Also checks the distance distributions, the
/// Krawtchouk route to the same sums and the decomposition identities.
inline std::vector<CheckTally> verify_lemmas(const SignMatrix& saturated, const LemmaOptions& opt = {}) {
  const std::int64_t n = static_cast<std::int64_t>(saturated.rows());
  std::map<std::string, CheckTally> tally;
  auto rec = [&](const std::string& name, bool pass, const std::string& ctx) {
    auto& t = tally[name];
    t.name = name;
    t.record(pass, ctx);
  };

  for (std::size_t k = 0; k <= 3; ++k) {
    for (const auto& drop : deletion_sets(saturated.cols(), k, opt.cap)) {
      const auto [h, removed] = drop_columns(saturated, drop);
      const std::string ctx = "n=" + std::to_string(n) + " drop " + detail::set_text(saturated, drop);
      std::optional<int> d;
      if (k == 3) d = d_parameter(removed.column(0), removed.column(1), removed.column(2), h.rows());

      const std::int64_t s3 = sum_j_squared(h, 3), s4 = sum_j_squared(h, 4);
      const auto w3 = closed_form::whole_array_sum(static_cast<int>(1 + k), n, d);
      const auto w4 = closed_form::whole_array_sum(static_cast<int>(5 + k), n, d);
      rec("whole-array item " + std::to_string(1 + k), Rational(s3) == w3, detail::mismatch(ctx, s3, w3));
      rec("whole-array item " + std::to_string(5 + k), Rational(s4) == w4, detail::mismatch(ctx, s4, w4));

      const auto dd = distance_distribution(h);
      const auto want_counts = closed_form::distance_counts(n, static_cast<int>(k), d);
      bool dist_ok = dd.counts.size() == want_counts.size();
      for (std::size_t j = 0; dist_ok && j < want_counts.size(); ++j) dist_ok = Rational(dd.counts[j]) == want_counts[j];
      rec("distance distribution k=" + std::to_string(k), dist_ok, ctx);
      rec("krawtchouk route s=3,4", scaled_gwp_entry(dd, 3) == s3 && scaled_gwp_entry(dd, 4) == s4, ctx);

      if (!opt.specific_columns || k > 2) continue;
      const int single3 = static_cast<int>(1 + k), single4 = static_cast<int>(6 + k);
      for (std::size_t i0 = 0; i0 < h.cols(); ++i0) {
        std::optional<int> di;
        if (k == 2) di = d_parameter(removed.column(0), removed.column(1), h.column(i0), h.rows());
        const std::string c1 = ctx + " i0=" + h.label(i0).to_string();
        const auto t3 = sum_j_squared_filtered(h, 3, {i0});
        const auto t4 = sum_j_squared_filtered(h, 4, {i0});
        const auto f3 = closed_form::specific_column_sum(single3, n, di);
        const auto f4 = closed_form::specific_column_sum(single4, n, di);
        rec("specific-column item " + std::to_string(single3), Rational(t3) == f3, detail::mismatch(c1, t3, f3));
        rec("specific-column item " + std::to_string(single4), Rational(t4) == f4, detail::mismatch(c1, t4, f4));
        if (k > 1) continue;
        for (std::size_t j0 = i0 + 1; j0 < h.cols(); ++j0) {
          std::optional<int> dp;
          if (k == 1) dp = d_parameter(removed.column(0), h.column(i0), h.column(j0), h.rows());
          const std::string c2 = c1 + " j0=" + h.label(j0).to_string();
          const auto p3 = sum_j_squared_filtered(h, 3, {i0, j0});
          const auto p4 = sum_j_squared_filtered(h, 4, {i0, j0});
          const int item3 = k == 0 ? 4 : 5, item4 = k == 0 ? 9 : 10;
          const auto g3 = closed_form::specific_column_sum(item3, n, dp);
          const auto g4 = closed_form::specific_column_sum(item4, n, dp);
          rec("specific-column item " + std::to_string(item3), Rational(p3) == g3, detail::mismatch(c2, p3, g3));
          rec("specific-column item " + std::to_string(item4), Rational(p4) == g4, detail::mismatch(c2, p4, g4));
        }
      }
    }
  }

  // Decomposition identities, peeling columns off the saturated design.
  for (const auto& pair : deletion_sets(saturated.cols(), 2, opt.cap ? opt.cap : std::optional<std::size_t>{12})) {
    rec("decomposition identities", verify_recursions(saturated, {pair[0]}) && verify_recursions(saturated, pair),
        "n=" + std::to_string(n) + " peel " + detail::set_text(saturated, pair));
  }

  for (const auto& f : closed_form::krawtchouk_forms()) {
    const auto q = n - f.offset;
    const auto got = krawtchouk(f.order, static_cast<int>(f.point(n)), static_cast<int>(q));
    rec("krawtchouk P" + std::to_string(f.order) + "(" + f.point_text + "; n-" + std::to_string(f.offset) + ")",
        Rational(got) == f.value(n), detail::mismatch("n=" + std::to_string(n), got, f.value(n)));
  }

  std::vector<CheckTally> out;
  for (auto& [_, t] : tally) out.push_back(std::move(t));
  return out;
}

/// The simplified values each theorem states for E(s^2), the bound and the
/// gap. `k` is the number of columns deleted from H(n, n-1).
struct TheoremClaim {
  std::string theorem;
  Rational es2;
  Rational lower_bound;
  Rational gap;
  bool optimal;
};

inline std::optional<TheoremClaim> theorem_claim(const SsdFamily& family, std::int64_t n, std::int64_t k,
                                                 std::optional<int> d = std::nullopt) {
  const __int128 N = n;
  auto R = [](__int128 a, __int128 b) { return make_rational(a, b); };
  const Rational zero(0);
  switch (family.index()) {
    case 0: {
      Rational v;
      if (k == 0) v = R(N * N, N + 1);
      else if (k == 1) v = R(N * (N - 4), N - 3);
      else if (k == 2) v = R(N * N * (N - 5), (N - 3) * (N - 1));
      else return std::nullopt;
      return TheoremClaim{"Theorem 1 case " + std::to_string(k + 1), v, v, zero, true};
    }
    case 1: {
      Rational v;
      if (k == 0) v = R(N * N, N + 1);
      else if (k == 1) v = R(N * (N - 4), N - 3);
      else return std::nullopt;
      return TheoremClaim{"Theorem 2 case " + std::to_string(k + 1), v, v, zero, true};
    }
    case 2: {
      const std::string name = "Theorem 3 case " + std::to_string(k + 1);
      if (k == 0) return TheoremClaim{name, R(N * (N - 4), N - 3), R(N * (N - 4), N - 3), zero, true};
      if (k == 1) {
        const auto v = R(N * N * (N - 5), (N - 1) * (N - 3));
        return TheoremClaim{name, v, v, zero, true};
      }
      if (k == 2) {
        const auto gap = R(8 * N * (N - 8), (N - 2) * (N - 3) * (N - 4) * (N - 5));
        return TheoremClaim{name, R(N * N * (N - 6), (N - 2) * (N - 3)),
                            R(N * (N * N * N - 13 * N * N + 48 * N - 32), (N - 3) * (N - 4) * (N - 5)), gap,
                            gap.numerator() == 0};
      }
      return std::nullopt;
    }
    default: {
      const std::string name = "Theorem 4 case " + std::to_string(k + 1);
      if (k == 0) {
        const auto v = R(N * N, 2 * N - 3);
        return TheoremClaim{name, v, v, zero, true};
      }
      if (k == 1) {
        const auto gap = R(N * N - 8 * N, (2 * N - 5) * (N - 3));
        return TheoremClaim{name, R(N * N * (N - 4), (2 * N - 5) * (N - 3)),
                            R(N * (N * N - 5 * N + 8), (2 * N - 5) * (N - 3)), gap, gap.numerator() == 0};
      }
      if (k == 2) {
        if (!d) return std::nullopt;
        const __int128 D = *d;
        const auto gap = R(4 * N * N + 128 * D * D - 32 * N * D - 16 * N, (N - 4) * (2 * N - 7));
        return TheoremClaim{name, R(N * N * N - 4 * N * N - 32 * N * D + 128 * D * D, (2 * N - 7) * (N - 4)),
                            R(N * (N - 4), 2 * N - 7), gap, gap.numerator() == 0};
      }
      return std::nullopt;
    }
  }
}

struct TheoremOptions {
  std::optional<std::size_t> cap;  // deletion sets per size, nullopt = exhaustive
  std::optional<std::size_t> choice_cap;  // deleted columns / parents per start
};

/// One (theorem case, n) row of the theorem table.
struct TheoremRow {
  std::string theorem;
  std::int64_t n = 0;
  std::string family;
  std::size_t cells = 0;
  std::size_t failed = 0;
  std::size_t aliased_cells = 0;
  std::set<Rational> es2_values;
  std::set<Rational> gaps;
  std::set<int> d_values;
  bool claimed_optimal = true;
  std::string first_failure;

  bool ok() const { return failed == 0; }
};

namespace detail {

inline std::vector<std::size_t> choice_positions(std::size_t count, std::optional<std::size_t> cap) {
  std::vector<std::size_t> out;
  if (!cap || count <= *cap) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(i);
  } else {
    for (std::size_t i = 0; i < *cap; ++i) out.push_back(i * count / *cap);
  }
  return out;
}

}  // namespace detail

/// Builds every covered (family, q, choice) cell from the saturated design
/// and compares direct E(s^2), the J route, the closed form, the bound and
/// the gap against the theorem statements.
inline std::vector<TheoremRow> verify_theorems(const SignMatrix& saturated, const TheoremOptions& opt = {}) {
  const std::int64_t n = static_cast<std::int64_t>(saturated.rows());
  std::map<std::pair<int, std::int64_t>, TheoremRow> rows;

  auto check = [&](const SsdBuild& b, std::int64_t k, const std::string& ctx) {
    const int key_family = static_cast<int>(b.family.index());
    auto& row = rows[{key_family, k}];
    const auto claim = theorem_claim(b.family, n, k, b.d);
    row.n = n;
    row.family = family_name(b.family);
    if (claim) {
      row.theorem = claim->theorem;
      row.claimed_optimal = claim->optimal;
    }
    const auto rep = verdict(b);
    const auto via_j = es2_via_j(b);
    std::string why;
    if (!claim) why = "no theorem claim (missing d)";
    else if (rep.es2 != claim->es2) why = "E(s2) " + to_string(rep.es2) + " != " + to_string(claim->es2);
    else if (via_j != rep.es2) why = "J route " + to_string(via_j) + " != direct " + to_string(rep.es2);
    else if (!rep.closed_form || *rep.closed_form != rep.es2) why = "closed form missing or different";
    else if (!rep.lower_bound || *rep.lower_bound != claim->lower_bound)
      why = "LB " + (rep.lower_bound ? to_string(*rep.lower_bound) : std::string("none")) + " != " +
            to_string(claim->lower_bound);
    else if (*rep.gap != claim->gap) why = "gap " + to_string(*rep.gap) + " != " + to_string(claim->gap);
    else if (rep.optimal != claim->optimal) why = "optimality verdict differs";
    ++row.cells;
    if (!why.empty() && row.failed++ == 0) row.first_failure = ctx + ": " + why;
    if (!b.aliasing.empty()) ++row.aliased_cells;
    row.es2_values.insert(rep.es2);
    if (rep.gap) row.gaps.insert(*rep.gap);
    if (b.d) row.d_values.insert(*b.d);
  };

  for (std::int64_t k = 0; k <= 2; ++k) {
    for (const auto& drop : deletion_sets(saturated.cols(), static_cast<std::size_t>(k), opt.cap)) {
      const auto start = starting_array(saturated, drop);
      const std::string ctx = "n=" + std::to_string(n) + " drop " + detail::set_text(saturated, drop);
      const auto& h = start.array;
      check(build_full(start), k, ctx + " full");
      check(build_interactions_only(start), k, ctx + " interactions-only");
      for (auto p : detail::choice_positions(h.cols(), opt.choice_cap))
        check(build_single_parent(start, h.label(p).first()), k, ctx + " parent " + h.label(p).to_string());
      if (k <= 1) {
        const auto full = build_full(start);
        for (auto c : detail::choice_positions(full.design.cols(), opt.choice_cap))
          check(build_minus_one(start, full.design.label(c)), k, ctx + " minus " + full.design.label(c).to_string());
      }
    }
  }
  std::vector<TheoremRow> out;
  for (auto& [_, r] : rows) out.push_back(std::move(r));
  return out;
}

}  // namespace ssd
