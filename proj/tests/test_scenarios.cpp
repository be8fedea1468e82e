#include <doctest.h>

#include <cmath>

#include "bloch/error.hpp"
#include "bloch/scenarios.hpp"

using namespace bloch;

TEST_SUITE("scenarios") {

TEST_CASE("pair examples") {
  const auto r = analyze_pair(4, {6, 15}, parse_decompositions("2x2"));
  CHECK(std::abs(r.probability - (9 + 2 * std::sqrt(3.0) * std::numbers::pi) / 24) < 1e-9);
  CHECK(r.convention == ConventionNote::paper_verified);
  CHECK_FALSE(r.boundary.has_value());

  const auto bi = analyze_pair(6, {24, 25}, parse_decompositions("3x2,2x3"));
  CHECK(std::abs(bi.probability - 3 * (4 + 5 * std::acos(0.6)) / (16 * std::sqrt(5.0))) < 1e-9);
  REQUIRE(bi.condition_measures.size() == 2);
  for (double m : bi.condition_measures) CHECK(bi.joint_measure <= m + 1e-12);

  const auto n9 = analyze_pair(9, {40, 63}, parse_decompositions("3x3"));
  CHECK(std::abs(n9.probability - (-49.0 / 192 + std::sqrt(14.0) / 3)) < 1e-9);
}

TEST_CASE("generator order does not matter") {
  const auto a = analyze_pair(8, {8, 49}, parse_decompositions("4x2"));
  const auto b = analyze_pair(8, {49, 8}, parse_decompositions("4x2"));
  CHECK(a.total_measure == b.total_measure);
  CHECK(a.joint_measure == b.joint_measure);
  CHECK(a.spec == b.spec);
}

TEST_CASE("argument errors carry the scenario") {
  CHECK_THROWS_AS(analyze_pair(4, {3, 3}, parse_decompositions("2x2")), InvalidArgument);
  CHECK_THROWS_AS(analyze_pair(4, {3, 6, 9}, parse_decompositions("2x2")), InvalidArgument);
  CHECK_THROWS_AS(analyze_pair(4, {3, 6}, {}), InvalidArgument);
  try {
    analyze_pair(6, {3, 6}, parse_decompositions("2x2"));
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("{3,6}") != std::string::npos);
  }
}

TEST_CASE("tightening tol moves values by less than the looser tol") {
  for (auto [n, a, b, c] : {std::tuple{4, 6, 8, "2x2"}, std::tuple{10, 33, 80, "5x2,2x5"}}) {
    AnalysisOptions loose, tight;
    loose.tol = 1e-6;
    tight.tol = 1e-9;
    const auto x = analyze_pair(n, {a, b}, parse_decompositions(c), false, loose);
    const auto y = analyze_pair(n, {a, b}, parse_decompositions(c), false, tight);
    CHECK(std::abs(x.total_measure - y.total_measure) <= 1e-6);
    CHECK(std::abs(x.joint_measure - y.joint_measure) <= 1e-6);
    CHECK(std::abs(x.probability - y.probability) <= 1e-6);
  }
}

TEST_CASE("boundary block") {
  const auto r = analyze_pair(6, {1, 13}, parse_decompositions("3x2"), true);
  REQUIRE(r.boundary.has_value());
  CHECK(r.boundary->convention == ConventionNote::unresolved_convention);
  CHECK(r.boundary->classified == 0.0);
  CHECK(std::abs(r.boundary->total - 8.0 / 3) < 1e-6);
  REQUIRE(r.boundary->interior.has_value());
  CHECK(std::abs(*r.boundary->interior - 2 * std::numbers::pi / 3) < 1e-6);
}

TEST_CASE("JSON round trip is byte-identical") {
  std::vector<ScenarioResult> rs = {analyze_pair(4, {3, 6}, parse_decompositions("2x2"), true),
                                    analyze_pair(8, {35, 38}, parse_decompositions("4x2,2x4,mid222"))};
  const std::string one = to_json(rs[0]);
  CHECK(to_json(scenario_from_json(one)) == one);
  const std::string many = to_json(rs);
  CHECK(to_json(scenarios_from_json(many)) == many);
  CHECK(one.find("\"n\"") < one.find("\"gens\""));
  CHECK(one.find("\"total\"") < one.find("\"joint\""));
  CHECK_THROWS_AS(scenario_from_json("{"), InvalidArgument);
}

TEST_CASE("CSV layout") {
  const auto r = analyze_pair(6, {24, 25}, parse_decompositions("3x2,2x3"));
  CHECK(csv_header().rfind("n,gens,conditions,total,joint,probability", 0) == 0);
  const std::string row = to_csv_row(r);
  CHECK(row.rfind("6,24;25,3x2;2x3,", 0) == 0);
}

}
