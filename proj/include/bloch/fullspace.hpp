#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bloch {

enum class MatrixCase { real, complex };
enum class ConstraintLevel { base, ppt, refine1, refine2 };

std::string to_string(MatrixCase c);
std::string to_string(ConstraintLevel l);
MatrixCase matrix_case_from_string(const std::string& s);
ConstraintLevel constraint_level_from_string(const std::string& s);

/// Narrows off-diagonal x(row, col) of a real 4x4 state to the range allowed
/// by the 3x3 principal minor on {row, col, pivot}, given the already
/// sampled x(row, pivot) and x(col, pivot). `upper_only` keeps the 2x2 lower limit.
struct Narrowing {
  int row = 0;  ///< 0-based, row < col
  int col = 0;
  int pivot = 0;
  bool upper_only = false;
};

/// 2x2-minor relaxation of the two-qubit state space.
/// base: all six principal 2x2 minors of rho are nonnegative;
/// ppt: additionally those of the 2x2-block partial transpose;
/// refine1 / refine2: base with narrowed integration limits.
struct MinorConstraintSet {
  MatrixCase matrix_case = MatrixCase::real;
  ConstraintLevel level = ConstraintLevel::base;
  std::vector<Narrowing> narrowings;

  /// Standard sets. refine1 narrows x(0,3) above via pivot 1; refine2 narrows
  /// x(0,3) on both sides via pivot 1 and x(1,2) via pivot 0 (real case only).
  static MinorConstraintSet make(MatrixCase c, ConstraintLevel level);
};

enum class SamplingMode { scrambled_sobol, plain };

struct SamplerOptions {
  SamplingMode mode = SamplingMode::scrambled_sobol;
  int randomizations = 32;
  int workers = 1;
};

struct MCEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double normalization = 0.0;  ///< 2^4 (real) or 2^7 (complex), already applied
  std::vector<double> randomization_means;
};

inline constexpr std::int64_t kMinSamples = 10000;

/// Volume of the relaxed body. Needs at least kMinSamples samples. The base constraints define the sampling
/// measure (diagonal uniform on the simplex, each off-diagonal uniform in its
/// 2x2-minor range, complex entries in the disk), so base samples carry only
/// weights; the extra constraints act as indicators. Points come from a Sobol
/// sequence with an independent random digital shift (XOR) per randomization,
/// or from mt19937_64 in plain mode; the standard error is taken across
/// randomizations. Deterministic in (set, samples, seed, randomizations).
MCEstimate minor_volume(const MinorConstraintSet& set, std::int64_t samples, std::uint64_t seed,
                        const SamplerOptions& options = {});

/// Dirichlet integral 2^4 * 2^6 Gamma(5/2)^4 / Gamma(10) for the real base body.
double closed_form_base_real();

struct ReferenceConstants {
  double real_hs_volume;                    ///< pi^4/60480
  double complex_hs_volume;                 ///< pi^6/851350500
  double conjectured_separable_probability; ///< 2^2 3 7^2 11 13 sqrt(3) / (5^4 pi^6)
  double base_real;                         ///< pi^2/1120
  double ppt_real;                          ///< 544/99225
  double refine1_real;                      ///< pi^2 (16 + pi^2) / 35840
  double refine2_real;                      ///< pi^4/26880
  double base_complex;                      ///< pi^6/7882875
  double ppt_complex;                       ///< 1964 pi^6/30435780375
};

ReferenceConstants reference_constants();

/// Reference value for a constraint set (NaN if none is known).
double reference_value(MatrixCase c, ConstraintLevel level);

}  // namespace bloch
