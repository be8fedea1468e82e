#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the region machinery.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bloch/linalg.hpp"
#include "bloch/ptrans.hpp"
#include "bloch/sections.hpp"

namespace oracle {

using bloch::Complex;
using bloch::HermitianMatrix;

inline HermitianMatrix random_hermitian(int n, std::mt19937_64& rng, bool real = false) {
  std::normal_distribution<double> g;
  HermitianMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, g(rng));
    for (int j = i + 1; j < n; ++j) m.set(i, j, Complex(g(rng), real ? 0.0 : g(rng)));
  }
  return m;
}

// Roots of t^2 - tr t + det, ascending.
inline std::array<double, 2> eig2(double a, Complex b, double d) {
  const double tr = a + d;
  const double det = a * d - std::norm(b);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  return {tr / 2 - disc, tr / 2 + disc};
}

// Brute-force area: cells of an m x m grid over [-R, R]^2 whose centres
// satisfy positivity and every PPT condition.
inline double grid_count_area(const bloch::SectionSpec& spec, const std::vector<bloch::TransposeSpec>& conds,
                              int m) {
  const double R = bloch::bounding_radius(spec.n);
  const double h = 2 * R / m;
  long count = 0;
  for (int i = 0; i < m; ++i) {
    const double x = -R + (i + 0.5) * h;
    for (int j = 0; j < m; ++j) {
      const double y = -R + (j + 0.5) * h;
      const double c[2] = {x, y};
      if (x * x + y * y > R * R) continue;
      if (!bloch::feasible(spec, c, 0.0)) continue;
      bool ok = true;
      for (const auto& t : conds) ok = ok && bloch::ppt(spec, c, t, 0.0);
      count += ok;
    }
  }
  return count * h * h;
}

// 2^4 * 2^6 * Gamma(5/2)^4 / Gamma(10): the simplex integral of the product
// of the six minor interval widths 2 sqrt(rho_ii rho_jj) = 2^6 (abcd)^{3/2},
// normalized by 2^4.
inline double dirichlet_base_real() {
  return 16.0 * 64.0 * std::pow(std::tgamma(2.5), 4) / std::tgamma(10.0);
}

}  // namespace oracle
