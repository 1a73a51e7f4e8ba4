#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ssd/csv.hpp"
#include "ssd/es2.hpp"
#include "ssd/hadamard.hpp"
#include "ssd/report_json.hpp"
#include "ssd/spectral.hpp"
#include "ssd/verification.hpp"
#include "ssd/wu_builder.hpp"

namespace ssd::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

enum class Command { Generate, Evaluate, VerifyLemmas, VerifyTheorems };

struct RunConfig {
  Command command = Command::Generate;
  std::size_t n = 0;
  std::vector<std::size_t> n_list{12, 16, 20, 24};
  std::optional<Construction> construction;
  std::optional<std::size_t> drop_count;
  std::vector<int> drop_cols;  // label indices c_i of H(n, n-1)
  std::string family = "full";
  std::optional<std::string> delete_label;
  std::optional<int> parent;
  std::string input;
  std::string out;
  std::string report;
  std::optional<std::size_t> cap;
  std::optional<std::size_t> choice_cap;
  std::optional<std::size_t> gwp_max_order;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string construction_name(Construction c) { return c == Construction::Sylvester ? "sylvester" : "paley"; }

inline std::optional<Construction> parse_construction(const std::string& s) {
  if (s == "sylvester") return Construction::Sylvester;
  if (s == "paley") return Construction::Paley;
  if (s.empty() || s == "auto") return std::nullopt;
  throw UsageError("unknown construction '" + s + "'");
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

inline std::string summary_line(const OptimalityReport& rep) {
  std::ostringstream os;
  os << "n=" << rep.n << " m=" << rep.m;
  if (rep.family) os << " family=" << family_name(*rep.family);
  if (rep.d) os << " d=" << *rep.d;
  os << " E(s2)=" << to_string(rep.es2);
  os << " LB=" << (rep.lower_bound ? to_string(*rep.lower_bound) : "n/a");
  os << " gap=" << (rep.gap ? to_string(*rep.gap) : "n/a");
  os << " optimal=" << (rep.optimal ? "true" : "false");
  os << " aliased_pairs=" << rep.aliased_pairs.size();
  return os.str();
}

/// Resolves construction, deletions and family into a build.
inline std::pair<SsdBuild, Construction> build_from_config(const RunConfig& cfg) {
  if (cfg.n == 0 || cfg.n % 4 != 0)
    throw UsageError("n=" + std::to_string(cfg.n) + " is not a positive multiple of 4 (n = 0 mod 4 required)");
  const auto how = cfg.construction ? cfg.construction : construction_for(cfg.n);
  if (!how) throw UsageError("no implemented construction (Sylvester or prime Paley) reaches n=" + std::to_string(cfg.n));
  SignMatrix saturated;
  try {
    saturated = to_hadamard_design(hadamard_of_order(cfg.n, *how));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  if (cfg.drop_count && !cfg.drop_cols.empty()) throw UsageError("use either --drop or --drop-cols, not both");
  std::vector<std::size_t> drop;
  if (cfg.drop_count) {
    if (*cfg.drop_count > 2) throw UsageError("--drop must be 0, 1 or 2 (q in {n-1, n-2, n-3})");
    for (std::size_t i = 0; i < *cfg.drop_count; ++i) drop.push_back(saturated.cols() - *cfg.drop_count + i);
  }
  for (int c : cfg.drop_cols) {
    const auto pos = saturated.find(ColumnLabel::main(c));
    if (!pos) throw UsageError("--drop-cols: c" + std::to_string(c) + " is not a column of H(n, n-1)");
    drop.push_back(*pos);
  }

  SsdFamily family;
  if (cfg.family == "full") {
    family = FullAugment{};
  } else if (cfg.family == "minus-one") {
    if (!cfg.delete_label) throw UsageError("--family minus-one needs --delete LABEL");
    const auto label = ColumnLabel::parse(*cfg.delete_label);
    if (!label) throw UsageError("bad label '" + *cfg.delete_label + "' (expected c3 or c1*c2)");
    family = MinusOne{*label};
  } else if (cfg.family == "interactions-only") {
    family = InteractionsOnly{};
  } else if (cfg.family == "single-parent") {
    if (!cfg.parent) throw UsageError("--family single-parent needs --parent I");
    family = SingleParent{*cfg.parent};
  } else {
    throw UsageError("unknown family '" + cfg.family + "'");
  }

  try {
    return {build(starting_array(saturated, drop), family), *how};
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

/// generate: writes the design CSV to cfg.out, the sidecar to cfg.out + ".json"
/// and, when requested, the report to cfg.report.
inline int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.out.empty()) throw UsageError("generate needs --out PATH");
    const auto [b, how] = build_from_config(cfg);
    const auto rep = verdict(b);
    write_text(cfg.out, design_csv(b.design));
    write_text(cfg.out + ".json", sidecar_json(b, construction_name(how), rep).dump(2) + "\n");
    if (!cfg.report.empty()) write_text(cfg.report, report_json(rep).dump(2) + "\n");
    out << summary_line(rep) << '\n';
    for (const auto& note : rep.notes) out << "note: " << note << '\n';
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

/// Full evaluation record of an arbitrary design.
inline Json evaluation_json(const SignMatrix& x, std::optional<std::size_t> gwp_max_order = std::nullopt) {
  const auto rep = assess(x);
  const std::size_t top = gwp_max_order.value_or(x.cols() <= 60 ? x.cols() : 6);
  Json j;
  j["n"] = x.rows();
  j["m"] = x.cols();
  j["balanced"] = is_balanced(x);
  j["oa_strength2"] = verify_oa_strength2(x);
  j["gwp_max_order"] = std::min(top, x.cols());
  j["gwp"] = gwp_json(gwp_via_krawtchouk(x, top));
  const Json body = report_json(rep);
  for (const auto& [k, v] : body.items())
    if (k != "n" && k != "m") j[k] = v;
  return j;
}

inline int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.input.empty()) throw UsageError("evaluate needs an input CSV path");
    const auto x = read_design_csv_file(cfg.input);
    if (x.cols() < 2) throw UsageError("design needs at least two columns");
    const auto j = evaluation_json(x, cfg.gwp_max_order);
    if (cfg.report.empty()) {
      out << j.dump(2) << '\n';
    } else {
      write_text(cfg.report, j.dump(2) + "\n");
      out << summary_line(assess(x)) << '\n';
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

namespace detail {

inline std::vector<std::pair<std::size_t, SignMatrix>> grid_designs(const RunConfig& cfg) {
  std::vector<std::pair<std::size_t, SignMatrix>> out;
  for (auto n : cfg.n_list) {
    try {
      out.emplace_back(n, saturated_design(n, cfg.construction));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

inline std::string join(const std::set<Rational>& vals) {
  std::string s;
  for (const auto& v : vals) s += (s.empty() ? "" : ",") + to_string(v);
  return s;
}

}  // namespace detail

inline int cmd_verify_lemmas(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Json report = Json::array();
    bool all_ok = true;
    for (const auto& [n, saturated] : detail::grid_designs(cfg)) {
      LemmaOptions opt;
      opt.cap = cfg.cap;
      const auto tallies = verify_lemmas(saturated, opt);
      for (const auto& t : tallies) {
        out << (t.ok() ? "PASS" : "FAIL") << "  n=" << n << "  " << t.name << "  checked=" << t.checked
            << " failed=" << t.failed << '\n';
        if (!t.ok()) out << "      first failure: " << t.first_failure << '\n';
        all_ok = all_ok && t.ok();
        report.push_back(Json{{"n", n},
                              {"check", t.name},
                              {"checked", t.checked},
                              {"failed", t.failed},
                              {"first_failure", t.ok() ? Json(nullptr) : Json(t.first_failure)}});
      }
    }
    if (!cfg.report.empty()) write_text(cfg.report, report.dump(2) + "\n");
    out << (all_ok ? "all lemma checks passed" : "lemma verification FAILED") << '\n';
    return all_ok ? kOk : kVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

inline int cmd_verify_theorems(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Json report = Json::array();
    bool all_ok = true;
    for (const auto& [n, saturated] : detail::grid_designs(cfg)) {
      TheoremOptions opt;
      opt.cap = cfg.cap;
      opt.choice_cap = cfg.choice_cap;
      for (const auto& row : verify_theorems(saturated, opt)) {
        out << (row.ok() ? "PASS" : "FAIL") << "  n=" << n << "  " << row.theorem << " (" << row.family
            << ")  cells=" << row.cells << " E(s2)=" << detail::join(row.es2_values)
            << " gap=" << detail::join(row.gaps) << " claimed=" << (row.claimed_optimal ? "optimal" : "non-optimal");
        if (!row.d_values.empty()) {
          out << " d=";
          bool first = true;
          for (int d : row.d_values) out << (first ? "" : ",") << d, first = false;
        }
        if (row.aliased_cells) out << " fully-aliased-cells=" << row.aliased_cells;
        out << '\n';
        if (!row.ok()) out << "      first failure: " << row.first_failure << '\n';
        all_ok = all_ok && row.ok();
        Json es2 = Json::array(), gaps = Json::array();
        for (const auto& v : row.es2_values) es2.push_back(rational_json(v));
        for (const auto& v : row.gaps) gaps.push_back(rational_json(v));
        report.push_back(Json{{"n", n},
                              {"theorem", row.theorem},
                              {"family", row.family},
                              {"cells", row.cells},
                              {"failed", row.failed},
                              {"claimed_optimal", row.claimed_optimal},
                              {"es2_values", es2},
                              {"gaps", gaps},
                              {"fully_aliased_cells", row.aliased_cells},
                              {"first_failure", row.ok() ? Json(nullptr) : Json(row.first_failure)}});
      }
    }
    if (!cfg.report.empty()) write_text(cfg.report, report.dump(2) + "\n");
    out << (all_ok ? "all theorem checks passed" : "theorem verification FAILED") << '\n';
    return all_ok ? kOk : kVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::Generate: return cmd_generate(cfg, out, err);
    case Command::Evaluate: return cmd_evaluate(cfg, out, err);
    case Command::VerifyLemmas: return cmd_verify_lemmas(cfg, out, err);
    default: return cmd_verify_theorems(cfg, out, err);
  }
}

}  // namespace ssd::cli
