#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bloch/error.hpp"
#include "bloch/regions.hpp"
#include "oracles.hpp"

using namespace bloch;

namespace {

constexpr double kPi = std::numbers::pi;

// exact boundary (margin 0) so closed forms compare tightly
RegionPredicate pred(int n, int a, int b, const char* conds = "") {
  return RegionPredicate::make(SectionSpec::make(n, {a, b}),
                               *conds ? parse_decompositions(conds) : std::vector<TransposeSpec>{}, 0.0);
}

}  // namespace

TEST_SUITE("regions") {

TEST_CASE("radial extent examples") {
  const double left[] = {-1, 0}, right[] = {1, 0};
  CHECK(radial_extent(pred(4, 3, 6), left) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(radial_extent(pred(6, 1, 13), right) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  for (int k = 0; k < 16; ++k) {
    const double u[] = {std::cos(0.3 + k * kPi / 8), std::sin(0.3 + k * kPi / 8)};
    CHECK(radial_extent(pred(6, 1, 13, "3x2"), u) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
  CHECK_THROWS_AS(RegionPredicate::make(SectionSpec::make(6, {1, 13}), parse_decompositions("2x2")),
                  InvalidArgument);
}

TEST_CASE("closed-form extent against bisection") {
  std::mt19937_64 rng(4);
  for (auto [n, a, b, c] : {std::tuple{4, 3, 6, "2x2"}, std::tuple{6, 8, 13, "3x2"}, std::tuple{8, 35, 38, "4x2,2x4,mid222"},
                            std::tuple{9, 40, 63, "3x3"}, std::tuple{10, 33, 80, "5x2,2x5"}}) {
    const auto p = pred(n, a, b, c);
    std::uniform_real_distribution<double> u(0, 2 * kPi);
    for (int s = 0; s < 50; ++s) {
      const double t = u(rng);
      const double d[] = {std::cos(t), std::sin(t)};
      CHECK(std::abs(radial_extent(p, d) - radial_extent_bisect(p, d)) < 1e-11);
    }
  }
}

TEST_CASE("areas and grid-count oracle") {
  CHECK(area_2d(pred(4, 3, 6)) == doctest::Approx(2 * std::sqrt(2.0) / 3).epsilon(1e-12));
  CHECK(area_2d(pred(4, 3, 6, "2x2")) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(area_2d(pred(4, 9, 15)) == doctest::Approx(std::sqrt(2.0) * kPi / 3).epsilon(1e-12));
  CHECK(area_2d(pred(6, 8, 13)) == doctest::Approx(2.0 / 3).epsilon(1e-12));

  for (auto [n, a, b, c] : {std::tuple{4, 3, 6, ""}, std::tuple{4, 6, 8, "2x2"}, std::tuple{6, 24, 25, "3x2,2x3"}}) {
    const auto p = pred(n, a, b, c);
    const int m = 1024;
    const double grid = oracle::grid_count_area(p.spec, p.conditions, m);
    const double cell = 2 * bounding_radius(n) / m;
    const double perimeter = boundary_polyline_2d(p).length();
    CHECK(std::abs(area_2d(p) - grid) < 2 * perimeter * cell);
    CHECK(std::abs(area_2d(p) - grid) < 1e-3);
  }
}

TEST_CASE("measure components are monotone") {
  const auto m = measure_2d(pred(8, 35, 38, "4x2,2x4,mid222"));
  REQUIRE(m.per_condition.size() == 3);
  for (double c : m.per_condition) {
    CHECK(c <= m.total);
    CHECK(m.joint <= c + 1e-12);
  }
}

TEST_CASE("corner search finds the square corners") {
  const auto corners = corner_angles_2d(pred(6, 1, 13));
  for (double want : {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4}) {
    bool found = false;
    for (double c : corners) found = found || std::abs(c - want) < 1e-9;
    CHECK(found);
  }
}

TEST_CASE("volumes") {
  const auto p = RegionPredicate::make(SectionSpec::make(4, {10, 12, 13}));
  CHECK(volume_3d(p) == doctest::Approx(kPi / 6).epsilon(1e-6));
  CHECK_THROWS_AS(volume_3d(pred(4, 3, 6)), InvalidArgument);
}

TEST_CASE("boundary polyline") {
  const auto sq = boundary_polyline_2d(pred(6, 1, 13));
  CHECK(std::abs(sq.length() - 8.0 / 3) < 1e-6);
  const auto p = pred(4, 3, 6);
  const auto poly = boundary_polyline_2d(p);
  const Section section(p.spec);
  int left = 0, right = 0;
  for (std::size_t i = 0; i < poly.angles.size(); ++i) {
    const auto a = poly.point(i);
    const double c[] = {a[0], a[1]};
    CHECK(std::abs(min_eigenvalue(section.density(c))) < 1e-9);
    const auto b = poly.point((i + 1) % poly.angles.size());
    const auto d = poly.point((i + 2) % poly.angles.size());
    const double cross = (b[0] - a[0]) * (d[1] - b[1]) - (b[1] - a[1]) * (d[0] - b[0]);
    left += cross > 1e-15;
    right += cross < -1e-15;
  }
  CHECK(right == 0);
  CHECK(left > 0);
  CHECK(std::abs(poly.length() - boundary_length_2d_integral(p)) < 1e-7);
}

TEST_CASE("boundary partition and interface") {
  const auto outer = pred(6, 1, 13);
  const auto inner = pred(6, 1, 13, "3x2");
  const auto part = boundary_partition_2d(outer, inner);
  CHECK(part.classified_length == 0.0);
  CHECK(std::abs(interior_interface_2d(outer, inner) - 2 * kPi / 3) < 1e-6);
  CHECK(interior_interface_2d(outer, outer) == 0.0);

  // {3,6}: the classified arcs are those with x >= 0
  const auto o36 = pred(4, 3, 6);
  const auto p36 = boundary_partition_2d(o36, pred(4, 3, 6, "2x2"));
  CHECK(p36.classified_length > 0.0);
  for (auto [a, b] : p36.classified_runs) {
    const double mid = 0.5 * (a + b);
    CHECK(std::cos(mid) >= -1e-9);
  }

  const double ratio = boundary_length_2d_integral(pred(6, 3, 11)) / boundary_length_2d_integral(o36);
  CHECK(std::abs(ratio - 2.0 / 3) < 1e-6);
}

TEST_CASE("surface areas") {
  SurfaceOptions opt;
  opt.rel_tol = 1e-7;
  const auto ball = star_surface_area([](const Vec3&) { return 1.0; }, [](const Vec3& p) { return p[2] > 0; }, opt);
  CHECK(std::abs(ball.total_area - 4 * kPi) < 1e-5);
  CHECK(std::abs(ball.classified_area - 2 * kPi) < 1e-3);

  // ellipsoid-free check of the gradient term: a sphere offset from the origin
  const double s = 0.3;
  auto radius = [&](const Vec3& u) { return s * u[2] + std::sqrt(s * s * u[2] * u[2] - s * s + 1.0); };
  const auto off = star_surface_area(radius, [](const Vec3&) { return false; }, opt);
  CHECK(std::abs(off.total_area - 4 * kPi) < 1e-4);

  SurfaceOptions spectral = opt;
  spectral.gradient = SurfaceGradient::spectral;
  const auto p = RegionPredicate::make(SectionSpec::make(4, {10, 12, 13}));
  const auto a = surface_area_3d(p, p, opt);
  const auto b = surface_area_3d(p, p, spectral);
  CHECK(std::abs(a.total_area - b.total_area) < 1e-4 * a.total_area);
}

}
