#include <doctest.h>

#include "bloch/enumeration.hpp"
#include "bloch/error.hpp"

using namespace bloch;

TEST_SUITE("enumeration") {

TEST_CASE("n = 4 classes") {
  const auto t = enumerate_classes(4, parse_decompositions("2x2"));
  CHECK(t.total_pairs == 105);
  REQUIRE(t.classes.size() == 5);
  const std::vector<GeneratorPair> reps = {{3, 6}, {6, 8}, {6, 15}, {8, 9}, {9, 15}};
  const std::vector<int> sizes = {4, 2, 2, 2, 2};
  int members = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(t.classes[i].representative == reps[i]);
    CHECK(t.classes[i].members == sizes[i]);
    CHECK(t.classes[i].member_pairs.size() == static_cast<std::size_t>(sizes[i]));
    CHECK(t.classes[i].probability < 1.0);
    members += t.classes[i].members;
  }
  CHECK(members + t.trivial_count == t.total_pairs);
}

TEST_CASE("worker count does not change the table") {
  const auto conds = parse_decompositions("3x2");
  EnumerationOptions one, four;
  four.workers = 4;
  const auto a = enumerate_classes(6, conds, one);
  const auto b = enumerate_classes(6, conds, four);
  CHECK(class_table_json(a) == class_table_json(b));
  CHECK(class_table_csv(a) == class_table_csv(b));
  bool found = false;
  for (const auto& c : a.classes) {
    if (c.representative == GeneratorPair{1, 13}) {
      found = true;
      CHECK(c.members == 48);
    }
  }
  CHECK(found);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(enumerate_classes(5, {}), InvalidArgument);
  CHECK_THROWS_AS(enumerate_classes(4, parse_decompositions("3x2")), InvalidArgument);
}

}
