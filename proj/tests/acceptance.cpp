// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Expected values are the theorem formulas written out here
// and dense brute-force computations from oracles.hpp.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ssd/csv.hpp"
#include "ssd/es2.hpp"
#include "ssd/lemmas.hpp"
#include "ssd/report_json.hpp"
#include "ssd/verification.hpp"

using namespace ssd;

namespace {

using R = Rational;

R q_(std::int64_t a, std::int64_t b) { return R(a, b); }

struct Criterion {
  Criterion(std::string i, std::string t) : id(std::move(i)), title(std::move(t)) {}

  std::string id;
  std::string title;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;
  std::string detail;

  void expect(bool ok, const std::string& ctx) {
    ++checks;
    if (!ok && failures++ == 0) first = ctx;
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& ctx) {
    std::ostringstream os;
    os << ctx << ": got " << got << ", want " << want;
    expect(got == want, os.str());
  }
};

int d_dense(const oracle::Dense& d, const std::vector<std::size_t>& triple) {
  const auto n = static_cast<std::int64_t>(d.size());
  return static_cast<int>((n + oracle::j_value(d, triple)) / 8);
}

R dense_es2(const SignMatrix& x) {
  const auto q = oracle::es2(oracle::dense(x));
  return R(q.numerator(), q.denominator());
}

std::string drop_text(const std::vector<std::size_t>& drop) {
  std::string s = "{";
  for (auto c : drop) s += (s.size() > 1 ? "," : "") + std::to_string(c + 1);
  return s + "}";
}

// Theorem 1 values for q = n-1, n-2, n-3.
R theorem1(std::int64_t n, std::size_t k) {
  if (k == 0) return q_(n * n, n + 1);
  if (k == 1) return q_(n * (n - 4), n - 3);
  return q_(n * n * (n - 5), (n - 3) * (n - 1));
}

const std::vector<std::size_t> kGrid{12, 16, 20, 24};

void ac1(Criterion& c) {
  for (std::size_t n : {12, 20, 24}) {
    const auto saturated = saturated_design(n, Construction::Paley);
    for (std::size_t k = 0; k <= 2; ++k) {
      std::size_t cells = 0;
      for (const auto& drop : deletion_sets(saturated.cols(), k)) {
        const auto b = build_full(starting_array(saturated, drop));
        const auto ctx = "n=" + std::to_string(n) + " drop " + drop_text(drop);
        const auto want = theorem1(static_cast<std::int64_t>(n), k);
        const auto es2 = es2_direct(b.design);
        c.equal(es2, want, ctx + " E(s2)");
        c.equal(lower_bound(static_cast<std::int64_t>(n), static_cast<std::int64_t>(b.design.cols())), want, ctx + " LB");
        if (cells++ < 3) c.equal(dense_es2(b.design), want, ctx + " dense E(s2)");
      }
    }
  }
  c.detail = "n=12: 144/13, 32/3, 112/11 = LB; n=20, 24 all deletion sets";
}

void ac2(Criterion& c) {
  const std::int64_t n = 12;
  const auto saturated = saturated_design(12);
  const auto dn = oracle::dense(saturated);
  std::size_t cells = 0;
  std::set<int> ds;
  for (std::size_t k = 0; k <= 1; ++k) {
    const auto want = theorem1(n, k);
    for (const auto& drop : deletion_sets(11, k)) {
      const auto start = starting_array(saturated, drop);
      const auto full = build_full(start);
      for (const auto& col : full.design.columns()) {
        const auto b = build_minus_one(start, col.label);
        const auto ctx = "drop " + drop_text(drop) + " minus " + col.label.to_string();
        c.equal(es2_direct(b.design), want, ctx);
        c.equal(lower_bound(n, static_cast<std::int64_t>(b.design.cols())), want, ctx + " LB");
        if (k == 1 && col.label.is_interaction()) {
          const int d = d_dense(dn, {drop[0], static_cast<std::size_t>(col.label.first() - 1),
                                     static_cast<std::size_t>(col.label.second() - 1)});
          ds.insert(d);
          c.equal(b.d.value_or(-1), d, ctx + " d");
        }
        ++cells;
      }
    }
  }
  c.expect(ds.size() >= 2, "q=n-2 deletions should cover more than one d value");
  std::string dtext;
  for (int d : ds) dtext += (dtext.empty() ? "" : ",") + std::to_string(d);
  c.detail = std::to_string(cells) + " deletion choices, one E(s2) per q; q=n-2 d values {" + dtext + "}";
}

void ac3(Criterion& c) {
  for (std::size_t nn : kGrid) {
    const auto n = static_cast<std::int64_t>(nn);
    const auto saturated = saturated_design(nn);
    for (std::size_t k = 0; k <= 2; ++k)
      for (const auto& drop : deletion_sets(saturated.cols(), k)) {
        const auto b = build_interactions_only(starting_array(saturated, drop));
        const auto rep = verdict(b);
        const auto ctx = "n=" + std::to_string(n) + " drop " + drop_text(drop);
        if (k < 2) {
          const auto want = k == 0 ? q_(n * (n - 4), n - 3) : q_(n * n * (n - 5), (n - 1) * (n - 3));
          c.equal(rep.es2, want, ctx + " E(s2)");
          c.expect(rep.optimal && rep.gap == R(0), ctx + " should be optimal");
        } else {
          c.equal(rep.es2, q_(n * n * (n - 6), (n - 2) * (n - 3)), ctx + " E(s2)");
          c.equal(rep.gap.value_or(R(-1)), q_(8 * n * (n - 8), (n - 2) * (n - 3) * (n - 4) * (n - 5)), ctx + " gap");
          c.expect(!rep.optimal, ctx + " should be non-optimal");
        }
      }
  }
  const auto io = verdict(build_interactions_only(starting_array(saturated_design(12), {9, 10})));
  c.equal(io.gap.value_or(R(-1)), q_(8, 105), "n=12 q=9 gap");
  c.detail = "n=12 q=9 gap " + to_string(io.gap.value_or(R(-1))) + " non-optimal; grid 12..24";
}

void ac4(Criterion& c) {
  std::set<int> d_seen;
  for (std::size_t nn : kGrid) {
    const auto n = static_cast<std::int64_t>(nn);
    const auto saturated = saturated_design(nn);
    const auto dn = oracle::dense(saturated);
    for (std::size_t k = 0; k <= 2; ++k)
      for (const auto& drop : deletion_sets(saturated.cols(), k)) {
        const auto start = starting_array(saturated, drop);
        for (const auto& pc : start.array.columns()) {
          const int parent = pc.label.first();
          const auto b = build_single_parent(start, parent);
          const auto rep = verdict(b);
          const auto ctx = "n=" + std::to_string(n) + " drop " + drop_text(drop) + " parent c" + std::to_string(parent);
          if (k == 0) {
            c.equal(rep.es2, q_(n * n, 2 * n - 3), ctx + " E(s2)");
            c.expect(rep.optimal, ctx + " optimal");
          } else if (k == 1) {
            c.equal(rep.gap.value_or(R(-1)), q_(n * n - 8 * n, (2 * n - 5) * (n - 3)), ctx + " gap");
            c.expect(!rep.optimal, ctx + " non-optimal");
          } else {
            const std::int64_t d = d_dense(dn, {drop[0], drop[1], static_cast<std::size_t>(parent - 1)});
            d_seen.insert(static_cast<int>(d));
            c.equal(rep.es2, q_(n * n * n - 4 * n * n - 32 * n * d + 128 * d * d, (2 * n - 7) * (n - 4)), ctx + " E(s2)");
            c.equal(rep.lower_bound.value_or(R(-1)), q_(n * (n - 4), 2 * n - 7), ctx + " LB");
            c.expect(rep.gap && *rep.gap > R(0), ctx + " gap > 0");
          }
        }
      }
  }
  std::string dtext;
  for (int d : d_seen) dtext += (dtext.empty() ? "" : ",") + std::to_string(d);
  c.detail = "all parents; q=n-3 d values {" + dtext + "}";
}

void ac5(Criterion& c) {
  std::string sizes;
  for (std::size_t nn : {12, 16, 20}) {
    const auto n = static_cast<std::int64_t>(nn);
    const auto saturated = saturated_design(nn);
    const auto full = oracle::dense(saturated);
    std::size_t sets = 0;
    for (std::size_t k = 0; k <= 3; ++k)
      for (const auto& drop : deletion_sets(saturated.cols(), k)) {
        ++sets;
        const auto kept = drop_columns(saturated, drop).kept;
        const auto kd = oracle::dense(kept);
        std::optional<int> d;
        if (k == 3) {
          d = d_dense(full, drop);
          const auto r = drop_columns(saturated, drop).removed;
          c.equal(d_parameter(r.column(0), r.column(1), r.column(2), nn), *d, "d_parameter");
        }
        const auto ctx = "n=" + std::to_string(n) + " drop " + drop_text(drop);
        const auto b3 = oracle::sum_j_sq(kd, 3), b4 = oracle::sum_j_sq(kd, 4);
        c.equal(R(b3), closed_form::whole_array_sum(static_cast<int>(1 + k), n, d), ctx + " order 3");
        c.equal(R(b4), closed_form::whole_array_sum(static_cast<int>(5 + k), n, d), ctx + " order 4");
        c.equal(sum_j_squared(kept, 3), b3, ctx + " library order 3");
        c.equal(sum_j_squared(kept, 4), b4, ctx + " library order 4");
      }
    sizes += (sizes.empty() ? "" : ", ") + ("n=" + std::to_string(n) + ": " + std::to_string(sets));
  }
  c.detail = "exhaustive deletion sets " + sizes;
}

void ac6(Criterion& c) {
  std::size_t cases = 0;
  for (std::size_t nn : {12, 16}) {
    const auto n = static_cast<std::int64_t>(nn);
    const auto saturated = saturated_design(nn);
    const auto full = oracle::dense(saturated);
    for (std::size_t k = 0; k <= 2; ++k)
      for (const auto& drop : deletion_sets(saturated.cols(), k)) {
        const auto kept = drop_columns(saturated, drop).kept;
        const auto kd = oracle::dense(kept);
        std::vector<std::size_t> orig;  // position in the saturated design
        for (std::size_t col = 0; col < saturated.cols(); ++col)
          if (std::find(drop.begin(), drop.end(), col) == drop.end()) orig.push_back(col);
        for (std::size_t a = 0; a < kept.cols(); ++a) {
          const auto ctx = "n=" + std::to_string(n) + " drop " + drop_text(drop) + " i0=c" + std::to_string(orig[a] + 1);
          std::optional<int> d1;
          if (k == 2) d1 = d_dense(full, {drop[0], drop[1], orig[a]});
          for (int s : {3, 4}) {
            const auto brute = oracle::sum_j_sq_containing(kd, static_cast<std::size_t>(s), {a});
            const int item = s == 3 ? static_cast<int>(1 + k) : static_cast<int>(6 + k);
            c.equal(R(brute), closed_form::specific_column_sum(item, n, d1), ctx + " item " + std::to_string(item));
            c.equal(sum_j_squared_filtered(kept, static_cast<std::size_t>(s), {a}), brute, ctx + " library");
            ++cases;
          }
          if (k == 2) continue;
          for (std::size_t b = a + 1; b < kept.cols(); ++b) {
            std::optional<int> d2;
            if (k == 1) d2 = d_dense(full, {drop[0], orig[a], orig[b]});
            for (int s : {3, 4}) {
              const auto brute = oracle::sum_j_sq_containing(kd, static_cast<std::size_t>(s), {a, b});
              const int item = s == 3 ? (k == 0 ? 4 : 5) : (k == 0 ? 9 : 10);
              c.equal(R(brute), closed_form::specific_column_sum(item, n, d2),
                      ctx + " j0=c" + std::to_string(orig[b] + 1) + " item " + std::to_string(item));
              c.equal(sum_j_squared_filtered(kept, static_cast<std::size_t>(s), {a, b}), brute, ctx + " library pair");
              ++cases;
            }
          }
        }
      }
  }
  c.detail = std::to_string(cases) + " (deletion set, specific columns, order) cases, items 1-10";
}

void ac7(Criterion& c) {
  std::size_t arrays = 0;
  auto check = [&](const SignMatrix& x, const std::string& ctx, bool dense) {
    ++arrays;
    const auto g = gwp_via_krawtchouk(x, std::min<std::size_t>(x.cols(), 6));
    const auto n2 = R(static_cast<std::int64_t>(x.rows() * x.rows()));
    const auto xd = dense ? oracle::dense(x) : oracle::Dense{};
    for (std::size_t s = 1; s <= std::min<std::size_t>(x.cols(), 6); ++s) {
      const auto enumerated = sum_j_squared(x, s);
      c.equal(g[s] * n2, R(enumerated), ctx + " s=" + std::to_string(s));
      if (dense) c.equal(oracle::sum_j_sq(xd, s), enumerated, ctx + " dense s=" + std::to_string(s));
    }
  };
  for (std::size_t n : kGrid) {
    const auto saturated = saturated_design(n);
    for (std::size_t k = 0; k <= 3; ++k)
      for (const auto& drop : deletion_sets(saturated.cols(), k, 4))
        check(drop_columns(saturated, drop).kept, "n=" + std::to_string(n) + " drop " + drop_text(drop), n <= 16);
  }
  const auto start = starting_array(saturated_design(12), {});
  check(build_full(start).design, "n=12 full", false);
  check(build_minus_one(start, ColumnLabel::interaction(1, 2)).design, "n=12 minus-one", false);
  check(build_interactions_only(start).design, "n=12 interactions-only", false);
  check(build_single_parent(start, 1).design, "n=12 single-parent", false);
  c.detail = std::to_string(arrays) + " arrays, orders 1..min(q,6)";
}

void ac8(Criterion& c) {
  const auto forms = closed_form::krawtchouk_forms();
  for (std::int64_t n : {12, 16, 20, 24})
    for (const auto& f : forms) {
      const auto got = oracle::krawtchouk(static_cast<std::size_t>(f.order), static_cast<std::size_t>(f.point(n)),
                                          static_cast<std::size_t>(n - f.offset));
      c.equal(R(got), f.value(n), "n=" + std::to_string(n) + " P" + std::to_string(f.order) + "(" + f.point_text +
                                      "; n-" + std::to_string(f.offset) + ")");
      c.equal(krawtchouk(f.order, static_cast<int>(f.point(n)), static_cast<int>(n - f.offset)), got, "library value");
    }
  c.detail = std::to_string(forms.size()) + " P3/P4 forms at n=12,16,20,24 by word enumeration";
}

std::size_t dense_aliased_pairs(const SignMatrix& x) {
  const auto d = oracle::dense(x);
  const auto n = static_cast<std::int64_t>(x.rows());
  std::size_t count = 0;
  for (std::size_t a = 0; a < x.cols(); ++a)
    for (std::size_t b = a + 1; b < x.cols(); ++b) count += std::abs(oracle::inner(d, a, b)) == n;
  return count;
}

void ac9(Criterion& c) {
  const auto b12 = build_full(starting_array(saturated_design(12, Construction::Paley), {}));
  const auto b24 = build_full(starting_array(saturated_design(24, Construction::Paley), {}));
  const auto b16 = build_full(starting_array(saturated_design(16, Construction::Sylvester), {}));
  c.expect(b12.aliasing.empty() && dense_aliased_pairs(b12.design) == 0, "n=12 Paley should have no aliased pairs");
  c.expect(b24.aliasing.empty() && dense_aliased_pairs(b24.design) == 0, "n=24 Paley should have no aliased pairs");
  c.expect(!b16.aliasing.empty(), "n=16 Sylvester should have aliased pairs");
  c.equal(b16.aliasing.size(), dense_aliased_pairs(b16.design), "n=16 pair count");
  const auto rep = verdict(b16);
  bool noted = false;
  for (const auto& note : rep.notes) noted = noted || note.find("fully aliased") != std::string::npos;
  c.expect(noted, "n=16 verdict notes should mention full aliasing");
  const auto j = report_json(rep);
  c.equal(j["aliased_pairs"].size(), b16.aliasing.size(), "n=16 JSON aliased_pairs");
  c.detail = "n=12: 0, n=24: 0, n=16 Sylvester: " + std::to_string(b16.aliasing.size()) + " pairs, noted in verdict";
}

void ac10(Criterion& c) {
  std::mt19937_64 rng(20240601);
  const auto saturated = saturated_design(12);
  std::size_t designs = 0, roundtrips = 0;
  R min_gap(1000);
  while (designs < 1000) {
    std::uniform_int_distribution<std::size_t> kdist(0, 2), mdist(12, 66), fdist(0, 3);
    const std::size_t k = kdist(rng);
    auto drops = deletion_sets(11, k);
    const auto drop = drops[std::uniform_int_distribution<std::size_t>(0, drops.size() - 1)(rng)];
    const auto start = starting_array(saturated, drop);
    SsdFamily fam = FullAugment{};
    switch (fdist(rng)) {
      case 1: fam = InteractionsOnly{}; break;
      case 2: fam = SingleParent{start.array.label(rng() % start.array.cols()).first()}; break;
      case 3:
        if (k < 2) fam = MinusOne{ColumnLabel::interaction(start.array.label(0).first(), start.array.label(1).first())};
        break;
      default: break;
    }
    const auto b = build(start, fam);
    const std::size_t m = std::min(mdist(rng), b.design.cols());
    if (m < 12) continue;

    // Random m columns, each with its runs permuted independently.
    std::vector<std::size_t> pick(b.design.cols());
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(m);
    std::vector<SignColumn> cols;
    for (auto p : pick) {
      std::vector<int> entries(12);
      for (std::size_t r = 0; r < 12; ++r) entries[r] = b.design(r, p);
      std::shuffle(entries.begin(), entries.end(), rng);
      std::uint64_t mask = 0;
      for (std::size_t r = 0; r < 12; ++r)
        if (entries[r] < 0) mask |= std::uint64_t{1} << r;
      cols.push_back({b.design.label(p), mask});
    }
    const SignMatrix x(12, std::move(cols));
    ++designs;
    const auto ctx = "design " + std::to_string(designs) + " m=" + std::to_string(m);
    c.expect(is_balanced(x), ctx + " balanced");
    const auto es2 = es2_direct(x);
    const auto lb = lower_bound(12, static_cast<std::int64_t>(m));
    c.expect(es2 >= lb, ctx + " E(s2) " + to_string(es2) + " < LB " + to_string(lb));
    c.equal(dense_es2(x), es2, ctx + " dense E(s2)");
    min_gap = std::min(min_gap, es2 - lb);

    const auto text = design_csv(x);
    std::istringstream in(text);
    const auto back = read_design_csv(in);
    c.expect(back == x && design_csv(back) == text, ctx + " CSV round trip");
    ++roundtrips;
  }

  // Rebuilding from the same inputs gives the same bytes.
  for (std::size_t n : kGrid) {
    const auto s1 = saturated_design(n), s2 = saturated_design(n);
    for (const SsdFamily& f : std::vector<SsdFamily>{FullAugment{}, InteractionsOnly{}, SingleParent{2},
                                                     MinusOne{ColumnLabel::interaction(1, 3)}}) {
      const auto a = build(starting_array(s1, {4}), f);
      const auto b = build(starting_array(s2, {4}), f);
      const auto ja = sidecar_json(a, "auto", verdict(a)).dump(2);
      const auto jb = sidecar_json(b, "auto", verdict(b)).dump(2);
      c.expect(design_csv(a.design) == design_csv(b.design) && ja == jb,
               "n=" + std::to_string(n) + " " + family_name(f) + " rebuild differs");
    }
  }
  c.detail = std::to_string(designs) + " shuffled designs, min gap " + to_string(min_gap) + "; " +
             std::to_string(roundtrips) + " CSV round trips; rebuilds byte-identical";
}

}  // namespace

int main() {
  std::vector<std::pair<Criterion, void (*)(Criterion&)>> all{
      {{"AC1", "full augmentation E(s2) = LB"}, ac1},
      {{"AC2", "minus-one for every deleted column"}, ac2},
      {{"AC3", "interactions-only values and gap"}, ac3},
      {{"AC4", "single-parent values, gap and d"}, ac4},
      {{"AC5", "whole-array J sums vs enumeration"}, ac5},
      {{"AC6", "specific-column J sums vs enumeration"}, ac6},
      {{"AC7", "Krawtchouk route = J enumeration"}, ac7},
      {{"AC8", "Krawtchouk closed forms"}, ac8},
      {{"AC9", "aliasing preconditions"}, ac9},
      {{"AC10", "bound, CSV round trip, determinism"}, ac10},
  };
  bool ok = true;
  for (auto& [crit, fn] : all) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(crit);
    } catch (const std::exception& e) {
      crit.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = crit.failures == 0 && crit.checks > 0;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << crit.id << "  " << crit.title << "  [" << crit.checks
              << " checks, " << std::fixed << std::setprecision(2) << secs << "s]  " << crit.detail << '\n';
    if (!pass) std::cout << "      " << crit.failures << " failure(s); first: " << crit.first << '\n';
  }
  return ok ? 0 : 1;
}
