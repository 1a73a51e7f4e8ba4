#include <gtest/gtest.h>

#include <sstream>

#include "ssd/csv.hpp"
#include "ssd/report_json.hpp"
#include "ssd/verification.hpp"

using namespace ssd;

namespace {

SignMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_design_csv(in);
}

void expect_csv_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse(text);
    FAIL() << "no error for:\n" << text;
  } catch (const CsvError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

}  // namespace

TEST(Csv, WritesHeaderAndSigns) {
  const auto x = SignMatrix::from_rows({{1, -1}, {-1, -1}});
  EXPECT_EQ(design_csv(x), "c1,c2\n+1,-1\n-1,-1\n");
}

TEST(Csv, ReadsWithAndWithoutHeader) {
  const auto a = parse("c3,c1*c2\n+1,-1\n-1,+1\n");
  EXPECT_EQ(a.label(0), ColumnLabel::main(3));
  EXPECT_EQ(a.label(1), ColumnLabel::interaction(1, 2));
  EXPECT_EQ(a(0, 1), -1);
  const auto b = parse("+1,-1\r\n-1,+1\r\n\n");
  EXPECT_EQ(b.rows(), 2u);
  EXPECT_EQ(b.label(1), ColumnLabel::main(2));
}

TEST(Csv, RoundTripIsBitExact) {
  const auto saturated = saturated_design(12);
  for (const SsdFamily& f : std::vector<SsdFamily>{FullAugment{}, SingleParent{3}, MinusOne{ColumnLabel::interaction(2, 7)}}) {
    const auto b = build(starting_array(saturated, {}), f);
    const auto text = design_csv(b.design);
    const auto back = parse(text);
    EXPECT_EQ(back, b.design);
    EXPECT_EQ(design_csv(back), text);
  }
}

TEST(Csv, Errors) {
  expect_csv_error("", 1, 1);
  expect_csv_error("c1,c2\n", 2, 1);
  expect_csv_error("+1,-1\n+1,0\n", 2, 2);
  expect_csv_error("+1,-1\n+1\n", 2, 2);
  expect_csv_error("c1,c2\n+1,-1,+1\n", 2, 3);
  expect_csv_error("c1,zz\n+1,-1\n", 1, 2);
  expect_csv_error("+1, -1\n", 1, 2);
  expect_csv_error("1,-1\n", 1, 1);  // read as a header; "1" is not a label
  expect_csv_error("c1,c1\n+1,-1\n", 1, 1);
}

TEST(Json, RationalShape) {
  const auto j = rational_json(Rational(144, 13));
  EXPECT_EQ(j["num"], 144);
  EXPECT_EQ(j["den"], 13);
  EXPECT_EQ(j["decimal"], "11.0769230769");
  EXPECT_EQ(rational_from_json(j), Rational(144, 13));
  EXPECT_TRUE(optional_rational_json(std::nullopt).is_null());
}

TEST(Json, ReportFields) {
  const auto b = build_single_parent(starting_array(saturated_design(12), {9, 10}), 1);
  const auto j = report_json(verdict(b));
  for (const char* key : {"n", "m", "family", "a", "r", "sign", "D", "lb", "es2", "gap", "optimal", "aliased_pairs", "d"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["m"], 17);
  EXPECT_EQ(j["family"], "single-parent");
  EXPECT_EQ(rational_from_json(j["lb"]), Rational(96, 17));
  EXPECT_EQ(j["optimal"], false);
  EXPECT_EQ(j["d"], *b.d);
}

TEST(Json, SidecarFields) {
  const auto b = build_minus_one(starting_array(saturated_design(12), {10}), ColumnLabel::interaction(2, 5));
  const auto j = sidecar_json(b, "paley", verdict(b));
  EXPECT_EQ(j["family"], "minus-one");
  EXPECT_EQ(j["deleted"], "c2*c5");
  EXPECT_TRUE(j["parent"].is_null());
  EXPECT_EQ(j["start"]["n"], 12);
  EXPECT_EQ(j["start"]["q"], 10);
  EXPECT_EQ(j["start"]["dropped"], Json::array({"c11"}));
  EXPECT_EQ(j["m"], 54);
  EXPECT_EQ(j["columns"].size(), 54u);
  EXPECT_EQ(j["report"]["es2"]["num"], 32);
}
