#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "bloch/error.hpp"
#include "bloch/refdata.hpp"

using namespace bloch;
namespace fs = std::filesystem;

TEST_SUITE("refdata") {

TEST_CASE("every table loads with the expected row counts") {
  const std::map<std::string, std::size_t> rows = {
      {"n4_pairs", 5},        {"n4_boundary", 5},        {"n4_interior", 5},    {"n6_32", 16},
      {"n6_32_boundary", 16}, {"n6_32_interior", 16},    {"n6_23", 14},         {"n6_23_boundary", 14},
      {"n6_23_interior", 14}, {"n6_bi", 24},             {"n6_bi_boundary", 24}, {"n6_bi_interior", 24},
      {"n8_42", 28},          {"n8_42_boundary", 28},    {"n8_24", 22},         {"n8_24_boundary", 22},
      {"n8_bi", 38},          {"n8_bi_boundary", 38},    {"n8_tri", 40},        {"n8_tri_boundary", 40},
      {"n8_tri_interior", 40}, {"n9", 34},               {"n9_boundary", 34},   {"n9_interior", 34},
      {"n10_52", 40},         {"n10_25", 30},            {"n10_bi", 59},        {"m3_volumes", 5},
      {"m3_boundary_areas", 9}, {"fullspace_constants", 12}};
  const auto ids = table_ids();
  CHECK(ids.size() == rows.size());
  for (const auto& id : ids) {
    INFO(id);
    const auto t = load(id);
    REQUIRE(rows.count(id) == 1);
    CHECK(t.rows.size() == rows.at(id));
    const bool boundaryish = t.kind == TableKind::boundary || t.kind == TableKind::interior ||
                             t.kind == TableKind::triad_boundary;
    CHECK((t.convention == ConventionNote::unresolved_convention) == boundaryish);
  }
}

TEST_CASE("expressions reproduce the printed decimals") {
  int checked = 0;
  for (const auto& id : table_ids()) {
    const auto t = load(id);
    for (const auto& r : t.rows) {
      for (const Quantity* q : {&r.total, &r.separable, &r.probability}) {
        if (!q->exact() || !q->printed) continue;
        INFO(id << " " << r.key << " " << q->expr);
        CHECK(std::abs(q->value() - *q->printed) < q->printed_tolerance());
        ++checked;
      }
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("spot rows") {
  const auto n4 = load("n4_pairs");
  std::vector<int> mult;
  for (const auto& r : n4.rows) mult.push_back(r.multiplicity.value_or(0));
  CHECK(mult == std::vector<int>{4, 2, 2, 2, 2});

  const auto n10 = load("n10_bi");
  const auto* r = n10.find(std::vector<int>{33, 80});
  REQUIRE(r);
  CHECK(std::abs(r->probability.value() - 8.0 / 243 * (-8 + 27 * std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(r->probability.value() - 0.993704) < 5e-7);

  const auto n8 = load("n8_42");
  const auto* s = n8.find(std::vector<int>{8, 49});
  REQUIRE(s);
  CHECK(std::abs(s->probability.value() - 7 / (3 * std::sqrt(6.0))) < 1e-12);

  const auto b = load("m3_boundary_areas");
  const auto* odd = b.find(std::vector<int>{1, 3, 6});
  REQUIRE(odd);
  CHECK(odd->note.find("pi/8") != std::string::npos);
  const auto k = load("fullspace_constants");
  CHECK(k.find(std::string_view("real_base")) != nullptr);
}

TEST_CASE("unknown ids and corrupted files") {
  CHECK_THROWS_AS(load("n7_pairs"), InvalidArgument);

  const fs::path dir = fs::temp_directory_path() / "bloch_refdata_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(refdata_directory())) fs::copy(e.path(), dir / e.path().filename());
  CHECK(load("n4_pairs", dir).rows.size() == 5);
  {
    std::ofstream f(dir / "n4_pairs.csv", std::ios::app);
    f << "9;15,2,1,,,,1,1,\n";
  }
  CHECK_THROWS_AS(load("n4_pairs", dir), DataError);
  fs::remove(dir / "n6_32.csv");
  CHECK_THROWS_AS(load("n6_32", dir), DataError);

  // relocation through the environment
  ::setenv("BLOCH_ATLAS_REFDATA", dir.c_str(), 1);
  CHECK(refdata_directory() == dir);
  CHECK_THROWS_AS(load("n4_pairs"), DataError);
  ::unsetenv("BLOCH_ATLAS_REFDATA");
  CHECK(load("n4_pairs").rows.size() == 5);
  fs::remove_all(dir);
}

TEST_CASE("checksum") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("comparison semantics") {
  const auto t = load("n4_pairs");
  std::vector<ScenarioResult> rs;
  for (const auto& r : t.rows) rs.push_back(analyze_pair(4, r.gens, t.conditions));
  const auto ok = compare(rs, t, 1e-6);
  CHECK(ok.ok());
  CHECK(ok.passed == 5);
  CHECK(ok.max_deviation < 1e-6);

  rs.pop_back();
  const auto missing = compare(rs, t, 1e-6);
  CHECK(missing.missing == 1);
  CHECK_FALSE(missing.ok());

  // wrong decomposition on n = 6: systematic per-row failures
  const auto n6 = load("n6_32");
  std::vector<ScenarioResult> wrong;
  for (const auto& r : n6.rows) wrong.push_back(analyze_pair(6, r.gens, parse_decompositions("2x3")));
  const auto bad = compare(wrong, n6, 1e-6);
  CHECK_FALSE(bad.ok());
  CHECK(bad.failed >= 10);

  // boundary tables are informational
  const auto nb = load("n4_boundary");
  std::vector<ScenarioResult> with_b;
  for (const auto& r : nb.rows) with_b.push_back(analyze_pair(4, r.gens, nb.conditions, true));
  const auto info = compare(with_b, nb, 1e-6);
  CHECK(info.informational);
  CHECK(info.ok());
  CHECK(to_json(info).find("informational (unresolved convention)") != std::string::npos);

  CHECK_THROWS_AS(compare(rs, load("fullspace_constants"), 1e-6), InvalidArgument);
}

}
