#include <doctest.h>

#include <cmath>
#include <random>

#include "bloch/error.hpp"
#include "bloch/gellmann.hpp"
#include "bloch/sections.hpp"
#include "oracles.hpp"

using namespace bloch;

TEST_SUITE("sections") {

TEST_CASE("SectionSpec canonicalization and validation") {
  const auto s = SectionSpec::make(4, {6, 3});
  CHECK(s.gens == std::vector<int>{3, 6});
  CHECK(s.label() == "{3,6}");
  CHECK_THROWS_AS(SectionSpec::make(4, {3, 3}), InvalidArgument);
  CHECK_THROWS_AS(SectionSpec::make(4, {3}), InvalidArgument);
  CHECK_THROWS_AS(SectionSpec::make(4, {1, 2, 3, 4}), InvalidArgument);
  CHECK_THROWS_AS(SectionSpec::make(4, {3, 16}), InvalidArgument);
  CHECK_THROWS_AS(SectionSpec::make(11, {1, 2}), InvalidArgument);
}

TEST_CASE("density basics") {
  const auto spec = SectionSpec::make(4, {3, 6});
  const double zero[] = {0.0, 0.0};
  CHECK(density(spec, zero) == HermitianMatrix::identity(4, 0.25));
  const double bad[] = {0.1};
  CHECK_THROWS_AS(density(spec, bad), InvalidArgument);

  const double c[] = {0.37, -0.21};
  const auto rho = density(spec, c);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 2; ++i) {
    const auto g = generator(4, spec.gens[i]);
    Complex t{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t += rho(a, b) * g(b, a);
    CHECK(std::abs(t - Complex(c[i])) < 1e-15);
  }
}

TEST_CASE("{3,6} eigenvalues in closed form") {
  const auto spec = SectionSpec::make(4, {3, 6});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int s = 0; s < 500; ++s) {
    const double x = u(rng), y = u(rng);
    const double c[] = {x, y};
    const double r = std::sqrt(x * x / 16 + y * y / 4);
    std::vector<double> ref = {0.25 + x / 2, 0.25, 0.25 - x / 4 + r, 0.25 - x / 4 - r};
    std::sort(ref.begin(), ref.end());
    const auto got = eigenvalues(density(spec, c));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-14);
  }
}

TEST_CASE("feasibility examples") {
  const auto s36 = SectionSpec::make(4, {3, 6});
  const double o[] = {0.0, 0.0}, out[] = {0.6, 0.0};
  CHECK(feasible(s36, o));
  CHECK_FALSE(feasible(s36, out));
  const auto s113 = SectionSpec::make(6, {1, 13});
  const double corner[] = {1.0 / 3, 1.0 / 3};
  CHECK(feasible(s113, corner));
  CHECK(bounding_radius(2) == doctest::Approx(1.0));
  CHECK(bounding_radius(4) == doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("origin margin, ray monotonicity, bounding disk") {
  std::mt19937_64 rng(8);
  for (int n : {4, 6, 8, 9, 10}) {
    std::uniform_int_distribution<int> g(1, n * n - 1);
    for (int s = 0; s < 20; ++s) {
      int a = g(rng), b = g(rng);
      if (a == b) continue;
      const auto spec = SectionSpec::make(n, {a, b});
      const double o[] = {0.0, 0.0};
      CHECK(min_eigenvalue(density(spec, o)) == doctest::Approx(1.0 / n).epsilon(1e-15));
      const double R = bounding_radius(n);
      std::uniform_real_distribution<double> u(-R, R);
      for (int t = 0; t < 200; ++t) {
        const double c[] = {u(rng), u(rng)};
        if (!feasible(spec, c)) continue;
        CHECK(c[0] * c[0] + c[1] * c[1] <= R * R * (1 + 1e-12));
        for (double f : {0.25, 0.5, 0.9}) {
          const double d[] = {f * c[0], f * c[1]};
          CHECK(feasible(spec, d));
        }
      }
    }
  }
}

TEST_CASE("convex midpoints") {
  // 10^4 feasible pairs per scenario
  for (auto [n, a, b] : {std::tuple{4, 3, 6}, std::tuple{4, 6, 8}, std::tuple{6, 8, 13}, std::tuple{9, 40, 63}}) {
    const auto spec = SectionSpec::make(n, {a, b});
    const double R = bounding_radius(n);
    std::mt19937_64 rng(n * 1000 + a);
    std::uniform_real_distribution<double> u(-R, R);
    auto draw = [&](double* c) {
      do {
        c[0] = u(rng);
        c[1] = u(rng);
      } while (!feasible(spec, std::span<const double>(c, 2), 0.0));
    };
    int violations = 0;
    for (int s = 0; s < 10000; ++s) {
      double p[2], q[2];
      draw(p);
      draw(q);
      const double m[] = {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
      violations += !feasible(spec, m, 1e-12);
    }
    CHECK(violations == 0);
  }
}

}
