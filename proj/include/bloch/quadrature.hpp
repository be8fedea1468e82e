#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bloch {

struct AdaptiveOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int initial_panels = 16;
  /// Extra panel edges (e.g. known corners of the integrand) inside (a, b).
  std::vector<double> breakpoints;
  std::size_t max_evaluations = std::size_t{1} << 20;
};

struct AdaptiveResult {
  std::vector<double> values;
  std::vector<double> errors;  ///< summed panel error estimates per component
  std::size_t evaluations = 0;
  int panels = 0;
};

/// Vector-valued integrand: f(x, out) writes one value per component.
using VectorIntegrand = std::function<void(double, std::span<double>)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b] for `components` integrands
/// sharing the same nodes. A panel's error is the largest of |K15 - G7|,
/// half the gap between its parent's K15 and the two children, and the size
/// of the two top Legendre coefficients of the 15-node interpolant. A corner
/// sitting between a panel edge and its outermost node is still invisible;
/// pass such points as breakpoints. The panel with the largest error in any
/// component is bisected until, for every component, the summed error estimate is below
/// max(abs_tol, rel_tol * max_c |I_c|). Throws NumericalFailure when the
/// evaluation budget is exhausted.
AdaptiveResult integrate_adaptive(const VectorIntegrand& f, int components, double a, double b,
                                  const AdaptiveOptions& options);

/// Scalar convenience wrapper.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& options);

}  // namespace bloch
