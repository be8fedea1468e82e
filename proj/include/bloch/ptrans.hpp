#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bloch/linalg.hpp"
#include "bloch/sections.hpp"

namespace bloch {

/// "p x q": the matrix is a q x q array of p x p blocks, each transposed in place.
struct BlockDecomposition {
  int p = 0;
  int q = 0;
  friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

/// Tensor factors `dims` (first factor most significant in the basis
/// ordering) and the 0-based factor positions to transpose.
struct Multipartite {
  std::vector<int> dims;
  std::vector<int> subset;
  friend bool operator==(const Multipartite&, const Multipartite&) = default;
};

class TransposeSpec {
 public:
  TransposeSpec(BlockDecomposition b);
  TransposeSpec(Multipartite m);

  /// Accepts "3x2" (also "3×2"), "mid222", and "2x2x2@1" / "2x2x2@0+2"
  /// (0-based transposed factor positions after '@').
  static TransposeSpec parse(std::string_view label);

  /// Canonical label; parse(label()) == *this.
  std::string label() const;

  int dimension() const noexcept;

  HermitianMatrix apply(const HermitianMatrix& m) const;

  const std::variant<BlockDecomposition, Multipartite>& value() const noexcept { return value_; }

  friend bool operator==(const TransposeSpec&, const TransposeSpec&) = default;

 private:
  std::variant<BlockDecomposition, Multipartite> value_;
};

/// Comma-separated list of labels ("4x2,2x4,mid222").
std::vector<TransposeSpec> parse_decompositions(std::string_view list);

/// Joins labels with ','.
std::string decompositions_label(std::span<const TransposeSpec> specs);

HermitianMatrix block_partial_transpose(const HermitianMatrix& m, int p, int q);
HermitianMatrix multipartite_partial_transpose(const HermitianMatrix& m, std::span<const int> dims,
                                               std::span<const int> subset);
HermitianMatrix partial_transpose(const HermitianMatrix& m, const TransposeSpec& spec);

/// min_eigenvalue(PT(density(spec, c))) >= -tol
bool ppt(const SectionSpec& spec, std::span<const double> c, const TransposeSpec& tspec,
         double tol = kFeasibleTolerance);

}  // namespace bloch
