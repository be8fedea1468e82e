#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace bloch {

using Complex = std::complex<double>;

inline constexpr int kMaxDimension = 16;

/// Dense complex Hermitian matrix of dimension at most kMaxDimension.
///
/// Storage is inline (no heap) so the type is cheap to construct in inner
/// loops. Every write goes through set(), which stores the mirror entry as
/// well, so Hermiticity holds exactly at all times.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int dim);

  static HermitianMatrix identity(int dim, double scale = 1.0);
  static HermitianMatrix diagonal(std::span<const double> values);

  int dim() const noexcept { return dim_; }

  Complex operator()(int row, int col) const noexcept { return entries_[index(row, col)]; }

  /// Writes entry (row, col) and its conjugate mirror. Diagonal entries must be real.
  void set(int row, int col, Complex value);

  /// this += scale * other (dimensions must agree).
  void add_scaled(const HermitianMatrix& other, double scale);

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double scale) noexcept;

  double trace() const noexcept;
  double frobenius_norm() const noexcept;
  bool is_real() const noexcept;

  /// Plain transpose; for a Hermitian matrix this is the entrywise conjugate.
  HermitianMatrix transpose() const;

  /// max |A(j,k) - B(j,k)|
  double max_abs_difference(const HermitianMatrix& other) const;

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) noexcept;

 private:
  int index(int row, int col) const noexcept { return row * dim_ + col; }

  int dim_;
  std::array<Complex, kMaxDimension * kMaxDimension> entries_{};
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double scale, HermitianMatrix a);

/// Selects how the Jacobi solver is fed.
///
/// `automatic` splits the matrix into connected blocks of its sparsity
/// graph, solves real blocks directly, gauges complex tree-shaped blocks to
/// real ones with a diagonal phase similarity, and embeds only the remaining
/// complex blocks. `embedding` always solves the full 2n x 2n real embedding
/// [[Re, -Im], [Im, Re]] and is kept as an independent reference route.
enum class SolverPath { automatic, embedding };

struct Eigensystem {
  std::vector<double> values;                ///< ascending
  std::vector<std::vector<Complex>> vectors;  ///< vectors[k] belongs to values[k]
};

/// Ascending eigenvalues. Throws NumericalFailure if Jacobi does not converge.
std::vector<double> eigenvalues(const HermitianMatrix& m, SolverPath path = SolverPath::automatic);

double min_eigenvalue(const HermitianMatrix& m);

/// Eigenvalues together with orthonormal eigenvectors.
Eigensystem eigensystem(const HermitianMatrix& m, SolverPath path = SolverPath::automatic);

/// Cyclic Jacobi on a dense real symmetric row-major n x n array, in place.
/// On return the diagonal holds the (unsorted) eigenvalues; if `vectors` is
/// non-empty it receives the eigenvectors as columns. Stops when the
/// off-diagonal Frobenius norm drops below 1e-14 * ||A||_F or throws after
/// 64 sweeps.
void jacobi_symmetric(std::span<double> a, int n, std::span<double> vectors = {});

inline constexpr int kMaxJacobiSweeps = 64;
inline constexpr double kJacobiRelativeTolerance = 1e-14;

}  // namespace bloch
