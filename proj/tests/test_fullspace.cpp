#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bloch/error.hpp"
#include "bloch/fullspace.hpp"
#include "oracles.hpp"

using namespace bloch;

TEST_SUITE("fullspace") {

TEST_CASE("closed forms") {
  const double pi = std::numbers::pi;
  CHECK(closed_form_base_real() == doctest::Approx(pi * pi / 1120).epsilon(1e-14));
  CHECK(oracle::dirichlet_base_real() == doctest::Approx(closed_form_base_real()).epsilon(1e-14));
  const auto k = reference_constants();
  CHECK(k.real_hs_volume == doctest::Approx(0.0016106).epsilon(1e-4));
  CHECK(k.complex_hs_volume == doctest::Approx(1.12925e-6).epsilon(1e-5));
  CHECK(k.conjectured_separable_probability == doctest::Approx(0.242379).epsilon(1e-5));
  CHECK(k.real_hs_volume / k.base_real == doctest::Approx(pi * pi / 54).epsilon(1e-12));
  CHECK(std::isnan(reference_value(MatrixCase::complex, ConstraintLevel::refine1)));
  CHECK_THROWS_AS(MinorConstraintSet::make(MatrixCase::complex, ConstraintLevel::refine2), InvalidArgument);
}

TEST_CASE("estimates are nested on shared streams") {
  for (auto mc : {MatrixCase::real, MatrixCase::complex}) {
    const auto base = minor_volume(MinorConstraintSet::make(mc, ConstraintLevel::base), 40000, 7);
    const auto ppt = minor_volume(MinorConstraintSet::make(mc, ConstraintLevel::ppt), 40000, 7);
    REQUIRE(base.randomization_means.size() == ppt.randomization_means.size());
    for (std::size_t r = 0; r < base.randomization_means.size(); ++r)
      CHECK(ppt.randomization_means[r] <= base.randomization_means[r]);
    CHECK(base.standard_error > 0.0);
  }
  const auto r1 = minor_volume(MinorConstraintSet::make(MatrixCase::real, ConstraintLevel::refine1), 40000, 7);
  const auto r2 = minor_volume(MinorConstraintSet::make(MatrixCase::real, ConstraintLevel::refine2), 40000, 7);
  const auto b = minor_volume(MinorConstraintSet::make(MatrixCase::real, ConstraintLevel::base), 40000, 7);
  for (std::size_t r = 0; r < b.randomization_means.size(); ++r) {
    CHECK(r1.randomization_means[r] <= b.randomization_means[r]);
    CHECK(r2.randomization_means[r] <= r1.randomization_means[r]);
  }
}

TEST_CASE("seeded determinism, worker independence") {
  const auto set = MinorConstraintSet::make(MatrixCase::complex, ConstraintLevel::ppt);
  SamplerOptions one, three;
  three.workers = 3;
  const auto a = minor_volume(set, 20000, 99, one);
  const auto b = minor_volume(set, 20000, 99, three);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
  const auto c = minor_volume(set, 20000, 100, one);
  CHECK(a.mean != c.mean);
  CHECK_THROWS_AS(minor_volume(set, 100, 1), InvalidArgument);
}

TEST_CASE("plain MC standard error scales as 1/sqrt(N)") {
  SamplerOptions plain;
  plain.mode = SamplingMode::plain;
  const auto set = MinorConstraintSet::make(MatrixCase::real, ConstraintLevel::ppt);
  // average the ratio over a few seeds to keep the check stable
  double ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto a = minor_volume(set, 100000, seed, plain);
    const auto b = minor_volume(set, 200000, seed + 100, plain);
    ratio += b.standard_error / a.standard_error / 4;
  }
  CHECK(ratio == doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("moderate-sample sanity against the references") {
  for (auto [mc, lvl] : {std::pair{MatrixCase::real, ConstraintLevel::base},
                         std::pair{MatrixCase::real, ConstraintLevel::ppt},
                         std::pair{MatrixCase::complex, ConstraintLevel::base}}) {
    const auto e = minor_volume(MinorConstraintSet::make(mc, lvl), 200000, 3);
    const double ref = reference_value(mc, lvl);
    CHECK(std::abs(e.mean - ref) < 4 * e.standard_error + 1e-3 * ref);
  }
}

}
