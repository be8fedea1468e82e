#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "bloch/linalg.hpp"

namespace bloch {

inline constexpr double kFeasibleTolerance = 1e-10;

/// (n, sorted tuple of 2 or 3 distinct generator indices).
struct SectionSpec {
  int n = 0;
  std::vector<int> gens;

  /// Validates indices and arity and sorts the tuple ascending.
  static SectionSpec make(int n, std::vector<int> gens);

  int arity() const noexcept { return static_cast<int>(gens.size()); }

  /// "{3,6}"
  std::string label() const;

  friend auto operator<=>(const SectionSpec&, const SectionSpec&) = default;
  friend bool operator==(const SectionSpec&, const SectionSpec&) = default;
};

/// Precomputed affine family rho(c) = A0 + sum_i c_i A_i with A0 = I/n and
/// A_i = lambda_{gens[i]} / 2.
class Section {
 public:
  explicit Section(SectionSpec spec);

  const SectionSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.n; }
  int arity() const noexcept { return spec_.arity(); }

  const HermitianMatrix& offset() const noexcept { return base_; }
  const std::vector<HermitianMatrix>& axes() const noexcept { return axes_; }

  HermitianMatrix density(std::span<const double> c) const;

  /// Linear part only: sum_i u_i A_i (traceless).
  HermitianMatrix direction(std::span<const double> u) const;

 private:
  void check_arity(std::size_t size) const;

  SectionSpec spec_;
  HermitianMatrix base_;
  std::vector<HermitianMatrix> axes_;
};

HermitianMatrix density(const SectionSpec& spec, std::span<const double> c);

/// min_eigenvalue(density(spec, c)) >= -tol
bool feasible(const SectionSpec& spec, std::span<const double> c, double tol = kFeasibleTolerance);

/// sqrt(2(n-1)/n): the purity bound tr rho^2 <= 1 confines every section to this ball.
double bounding_radius(int n);

}  // namespace bloch
