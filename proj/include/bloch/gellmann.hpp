#pragma once

#include <vector>

#include "bloch/linalg.hpp"

namespace bloch {

enum class GeneratorKind { symmetric, antisymmetric, diagonal };

/// Decoded generator index. Rows/columns are 0-based; for diagonal
/// generators `level` is d (1..n-1) and row/col are unused.
struct GeneratorInfo {
  GeneratorKind kind;
  int row = 0;  ///< i < j, 0-based
  int col = 0;
  int level = 0;
};

/// Index k (1..n^2-1) in the standard numbering: grouped by level m = 2..n,
/// each level listing sym(1,m), asym(1,m), ..., sym(m-1,m), asym(m-1,m),
/// diag(m-1) and ending at index m^2-1.
GeneratorInfo decode(int n, int k);

/// Inverse of decode().
int encode(int n, const GeneratorInfo& info);

/// Generalized Gell-Mann generator lambda_k, normalized tr(lambda_a lambda_b) = 2 delta_ab.
HermitianMatrix generator(int n, int k);

/// All n^2-1 generators in index order.
std::vector<HermitianMatrix> basis(int n);

inline constexpr int kMinGeneratorDimension = 2;
inline constexpr int kMaxGeneratorDimension = 10;

}  // namespace bloch
