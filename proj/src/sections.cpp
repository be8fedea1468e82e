#include "bloch/sections.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bloch/error.hpp"
#include "bloch/gellmann.hpp"

namespace bloch {

SectionSpec SectionSpec::make(int n, std::vector<int> gens) {
  if (n < kMinGeneratorDimension || n > kMaxGeneratorDimension) {
    throw InvalidArgument("section: n = " + std::to_string(n) + " outside 2..10");
  }
  if (gens.size() < 2 || gens.size() > 3) {
    throw InvalidArgument("section: expected 2 or 3 generator indices, got " + std::to_string(gens.size()));
  }
  for (int k : gens) {
    if (k < 1 || k > n * n - 1) {
      throw InvalidArgument("section: generator index " + std::to_string(k) + " outside 1.." +
                            std::to_string(n * n - 1));
    }
  }
  std::sort(gens.begin(), gens.end());
  if (std::adjacent_find(gens.begin(), gens.end()) != gens.end()) {
    throw InvalidArgument("section: duplicate generator index");
  }
  return SectionSpec{n, std::move(gens)};
}

std::string SectionSpec::label() const {
  std::string s = "{";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(gens[i]);
  }
  return s + "}";
}

Section::Section(SectionSpec spec)
    : spec_(SectionSpec::make(spec.n, std::move(spec.gens))), base_(HermitianMatrix::identity(spec_.n, 1.0 / spec_.n)) {
  axes_.reserve(spec_.gens.size());
  for (int k : spec_.gens) axes_.push_back(0.5 * generator(spec_.n, k));
}

void Section::check_arity(std::size_t size) const {
  if (size != axes_.size()) {
    throw InvalidArgument("section " + spec_.label() + ": expected " + std::to_string(axes_.size()) +
                          " coordinates, got " + std::to_string(size));
  }
}

HermitianMatrix Section::density(std::span<const double> c) const {
  check_arity(c.size());
  HermitianMatrix rho = base_;
  for (std::size_t i = 0; i < axes_.size(); ++i) rho.add_scaled(axes_[i], c[i]);
  return rho;
}

HermitianMatrix Section::direction(std::span<const double> u) const {
  check_arity(u.size());
  HermitianMatrix d(spec_.n);
  for (std::size_t i = 0; i < axes_.size(); ++i) d.add_scaled(axes_[i], u[i]);
  return d;
}

HermitianMatrix density(const SectionSpec& spec, std::span<const double> c) { return Section(spec).density(c); }

bool feasible(const SectionSpec& spec, std::span<const double> c, double tol) {
  if (tol < 0.0) throw InvalidArgument("feasible: negative tolerance");
  return min_eigenvalue(density(spec, c)) >= -tol;
}

double bounding_radius(int n) {
  if (n < 2) throw InvalidArgument("bounding_radius: n < 2");
  return std::sqrt(2.0 * (n - 1) / n);
}

}  // namespace bloch
