#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ssd/es2.hpp"
#include "ssd/spectral.hpp"
#include "ssd/wu_builder.hpp"

namespace ssd {

using Json = nlohmann::ordered_json;

/// {num, den, decimal}; equality is decided on num/den only.
inline Json rational_json(const Rational& r) {
  return Json{{"num", r.numerator()}, {"den", r.denominator()}, {"decimal", to_decimal(r)}};
}

inline Json optional_rational_json(const std::optional<Rational>& r) {
  return r ? rational_json(*r) : Json(nullptr);
}

inline Rational rational_from_json(const Json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline Json decomposition_json(const Decomposition& d) {
  return Json{{"a", d.a}, {"r", d.r}, {"sign", d.sign > 0 ? "+" : "-"}, {"D", d.D}};
}

inline Json aliased_pairs_json(const std::vector<AliasedPair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs)
    out.push_back(Json{{"first", p.first_label.to_string()}, {"second", p.second_label.to_string()}, {"inner", p.inner}});
  return out;
}

inline Json family_json(const std::optional<SsdFamily>& f) {
  return f ? Json(family_name(*f)) : Json(nullptr);
}

inline Json report_json(const OptimalityReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["family"] = family_json(rep.family);
  if (rep.tightest) {
    j["a"] = rep.tightest->a;
    j["r"] = rep.tightest->r;
    j["sign"] = rep.tightest->sign > 0 ? "+" : "-";
    j["D"] = rep.tightest->D;
  } else {
    j["a"] = j["r"] = j["sign"] = j["D"] = nullptr;
  }
  j["decompositions"] = Json::array();
  for (const auto& d : rep.decompositions) j["decompositions"].push_back(decomposition_json(d));
  j["lb"] = optional_rational_json(rep.lower_bound);
  j["es2"] = rational_json(rep.es2);
  j["gap"] = optional_rational_json(rep.gap);
  j["optimal"] = rep.optimal;
  j["aliased_pairs"] = aliased_pairs_json(rep.aliased_pairs);
  j["d"] = rep.d ? Json(*rep.d) : Json(nullptr);
  j["closed_form"] = optional_rational_json(rep.closed_form);
  j["notes"] = rep.notes;
  return j;
}

/// Sidecar written next to a generated design CSV.
inline Json sidecar_json(const SsdBuild& b, const std::string& construction, const OptimalityReport& rep) {
  Json j;
  j["family"] = family_name(b.family);
  if (const auto* del = std::get_if<MinusOne>(&b.family))
    j["deleted"] = del->deleted.to_string();
  else
    j["deleted"] = nullptr;
  if (const auto* sp = std::get_if<SingleParent>(&b.family))
    j["parent"] = ColumnLabel::main(sp->parent).to_string();
  else
    j["parent"] = nullptr;
  j["d"] = b.d ? Json(*b.d) : Json(nullptr);
  Json dropped = Json::array();
  for (const auto& c : b.start.removed.columns()) dropped.push_back(c.label.to_string());
  j["start"] = Json{{"n", b.start.array.rows()},
                    {"q", b.start.array.cols()},
                    {"construction", construction},
                    {"dropped", dropped}};
  j["m"] = b.design.cols();
  Json cols = Json::array();
  for (const auto& c : b.design.columns()) cols.push_back(c.label.to_string());
  j["columns"] = cols;
  j["report"] = report_json(rep);
  return j;
}

inline Json gwp_json(const GwpVector& g) {
  Json out = Json::array();
  for (const auto& a : g.A) out.push_back(rational_json(a));
  return out;
}

}  // namespace ssd
