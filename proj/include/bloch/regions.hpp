#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "bloch/linalg.hpp"
#include "bloch/ptrans.hpp"
#include "bloch/sections.hpp"

namespace bloch {

inline constexpr double kBisectionTolerance = 1e-12;
inline constexpr double kBoundaryTolerance = 1e-9;   ///< |min eigenvalue| on traced boundaries
inline constexpr double kInteriorTolerance = 1e-8;   ///< interiority margin used by property checks
inline constexpr double kClassifierTolerance = 1e-12;
inline constexpr double kTransitionTolerance = 1e-9;  ///< angular resolution of class transitions
inline constexpr int kMaxTransitionIterations = 60;
/// Classified runs shorter than this are contact points (tangencies), not arcs.
inline constexpr double kContactLength = 1e-5;

/// Feasibility of the section plus zero or more PPT conditions, all at `tol`.
struct RegionPredicate {
  SectionSpec spec;
  std::vector<TransposeSpec> conditions;
  double tol = kFeasibleTolerance;

  /// Validates that every decomposition matches spec.n.
  static RegionPredicate make(SectionSpec spec, std::vector<TransposeSpec> conditions = {},
                              double tol = kFeasibleTolerance);
};

/// Region predicate compiled to matrices. Constraint 0 is positivity of
/// rho(c); constraint k >= 1 is positivity of PT_k(rho(c)). Each constraint
/// is affine in c with constant part I/n (partial transposes fix I/n), so the
/// exit radius along a unit direction u is (1/n + tol) / -lambda_min(D_k(u))
/// with D_k(u) the linear part.
class RegionModel {
 public:
  explicit RegionModel(RegionPredicate pred);

  const RegionPredicate& predicate() const noexcept { return pred_; }
  int arity() const noexcept { return pred_.spec.arity(); }
  int dim() const noexcept { return pred_.spec.n; }
  int constraint_count() const noexcept { return static_cast<int>(axes_.size()); }

  /// Linear part of constraint k along u.
  HermitianMatrix constraint_direction(int k, std::span<const double> u) const;
  /// Full matrix of constraint k at point c.
  HermitianMatrix constraint_matrix(int k, std::span<const double> c) const;
  const std::vector<HermitianMatrix>& constraint_axes(int k) const { return axes_.at(k); }

  /// Exit radius of constraint k along unit u at margin `tol` (infinity if it never binds).
  double constraint_extent(int k, std::span<const double> u, double tol) const;
  /// min over all constraints, at the predicate's tolerance.
  double extent(std::span<const double> u) const;
  double extent(std::span<const double> u, double tol) const;

  /// Smallest eigenvalue across all constraint matrices at c.
  double min_eigenvalue(std::span<const double> c) const;
  bool contains(std::span<const double> c, double tol) const { return min_eigenvalue(c) >= -tol; }
  bool contains(std::span<const double> c) const { return contains(c, pred_.tol); }

 private:
  RegionPredicate pred_;
  std::vector<std::vector<HermitianMatrix>> axes_;  // [constraint][coordinate]
};

/// Exit radius along `direction` (normalized internally).
double radial_extent(const RegionPredicate& pred, std::span<const double> direction);

/// Same quantity by bisection of the predicate on [0, bounding radius].
/// Throws NumericalFailure if the predicate still holds at the bracket end.
double radial_extent_bisect(const RegionPredicate& pred, std::span<const double> direction,
                            double tol = kBisectionTolerance);

/// Lebesgue measures on shared quadrature nodes: total (positivity only),
/// positivity with each single condition, and with all conditions jointly.
struct RegionMeasures {
  double total = 0.0;
  std::vector<double> per_condition;
  double joint = 0.0;
  double error = 0.0;  ///< largest summed error estimate among components
  std::size_t evaluations = 0;
};

/// Angles where some measured component's radial function has a corner
/// (two eigenvalue branches tie for the binding radius). measure_2d uses
/// them as panel edges when rel_tol < kCornerSearchBelow; coarser runs skip
/// the search.
std::vector<double> corner_angles_2d(const RegionPredicate& pred);
inline constexpr double kCornerSearchBelow = 1e-6;

RegionMeasures measure_2d(const RegionPredicate& pred, double rel_tol = 1e-8);
RegionMeasures measure_3d(const RegionPredicate& pred, double rel_tol = 1e-6);

/// Area of the full predicate region: (1/2) integral of r(theta)^2.
double area_2d(const RegionPredicate& pred, double rel_tol = 1e-8);
/// Volume of the full predicate region: (1/3) integral of r^3 over the sphere.
double volume_3d(const RegionPredicate& pred, double rel_tol = 1e-6);

/// Closed boundary polyline, vertices ordered by angle.
struct RadialProfile {
  std::vector<double> angles;  ///< ascending in [0, 2 pi)
  std::vector<double> radii;
  std::size_t evaluations = 0;
  double min_step = 0.0;  ///< smallest angular gap after refinement

  std::array<double, 2> point(std::size_t i) const;
  /// Euclidean length of the closed polyline.
  double length() const;
};

/// Adaptive chord refinement of the boundary (constraint margin 0). An
/// interval is split while its chord excess |PM|+|MB|-|AB| exceeds
/// target_error * width / (2 pi); corners stop refining at width 1e-9.
RadialProfile boundary_polyline_2d(const RegionPredicate& pred, double target_error = 1e-7);

struct BoundaryPartition {
  double total_length = 0.0;
  double classified_length = 0.0;
  /// Classified runs as [start, end] angle pairs (end may exceed 2 pi when wrapping).
  std::vector<std::pair<double, double>> classified_runs;
};

/// Splits the boundary of `pred` into sub-arcs inside / outside `classifier`.
BoundaryPartition boundary_partition_2d(const RegionPredicate& pred, const RegionPredicate& classifier,
                                        double target_error = 1e-7);

/// Length of the part of inner's boundary lying strictly inside `outer`.
double interior_interface_2d(const RegionPredicate& outer, const RegionPredicate& inner,
                             double target_error = 1e-7);

/// Boundary length as the integral of sqrt(r^2 + r'^2) with r' from the
/// eigenvector derivative of the active constraint (independent of the polyline).
double boundary_length_2d_integral(const RegionPredicate& pred, double rel_tol = 1e-9);

enum class SurfaceGradient { finite_difference, spectral };

struct SurfaceOptions {
  double rel_tol = 1e-6;
  SurfaceGradient gradient = SurfaceGradient::finite_difference;
  double step = 1e-4;  ///< finite-difference step in radians (Richardson with step/2)
};

struct SurfacePartition {
  double total_area = 0.0;
  double classified_area = 0.0;
  std::size_t evaluations = 0;
};

using Vec3 = std::array<double, 3>;

/// Surface area of a star-shaped body given its radial function on the unit
/// sphere: dS = r sqrt(r^2 + |grad_S r|^2) d omega, gradient by central
/// differences with one Richardson step. `classify` receives surface points.
SurfacePartition star_surface_area(const std::function<double(const Vec3&)>& radius,
                                   const std::function<bool(const Vec3&)>& classify,
                                   const SurfaceOptions& options = {});

/// Boundary surface of a 3-parameter region, split by `classifier`.
SurfacePartition surface_area_3d(const RegionPredicate& pred, const RegionPredicate& classifier,
                                 const SurfaceOptions& options = {});

}  // namespace bloch
