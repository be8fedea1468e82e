#include "bloch/fullspace.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <boost/random/sobol.hpp>

#include "bloch/error.hpp"

namespace bloch {

std::string to_string(MatrixCase c) { return c == MatrixCase::real ? "real" : "complex"; }

std::string to_string(ConstraintLevel l) {
  switch (l) {
    case ConstraintLevel::base: return "base";
    case ConstraintLevel::ppt: return "ppt";
    case ConstraintLevel::refine1: return "refine1";
    case ConstraintLevel::refine2: return "refine2";
  }
  return "?";
}

MatrixCase matrix_case_from_string(const std::string& s) {
  if (s == "real") return MatrixCase::real;
  if (s == "complex") return MatrixCase::complex;
  throw InvalidArgument("unknown case '" + s + "' (real|complex)");
}

ConstraintLevel constraint_level_from_string(const std::string& s) {
  if (s == "base") return ConstraintLevel::base;
  if (s == "ppt") return ConstraintLevel::ppt;
  if (s == "refine1") return ConstraintLevel::refine1;
  if (s == "refine2") return ConstraintLevel::refine2;
  throw InvalidArgument("unknown constraint set '" + s + "' (base|ppt|refine1|refine2)");
}

MinorConstraintSet MinorConstraintSet::make(MatrixCase c, ConstraintLevel level) {
  MinorConstraintSet s{c, level, {}};
  if (level == ConstraintLevel::refine1 || level == ConstraintLevel::refine2) {
    if (c != MatrixCase::real) throw InvalidArgument("refined limits are defined for the real case only");
    if (level == ConstraintLevel::refine1) {
      s.narrowings = {{0, 3, 1, true}};
    } else {
      s.narrowings = {{0, 3, 1, false}, {1, 2, 0, false}};
    }
  }
  return s;
}

namespace {

constexpr std::array<std::array<int, 2>, 6> kOffDiagonal = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int slot_of(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int s = 0; s < 6; ++s) {
    if (kOffDiagonal[s][0] == i && kOffDiagonal[s][1] == j) return s;
  }
  return -1;
}

struct Plan {
  bool complex = false;
  bool ppt = false;
  int dimension = 0;
  std::array<int, 6> order{};  // off-diagonal slots in sampling order
  std::array<int, 6> narrowing_of{};  // index into narrowings or -1
  std::vector<Narrowing> narrowings;
};

Plan make_plan(const MinorConstraintSet& set) {
  Plan p;
  p.complex = set.matrix_case == MatrixCase::complex;
  p.ppt = set.level == ConstraintLevel::ppt;
  p.dimension = 3 + (p.complex ? 12 : 6);
  p.narrowings = set.narrowings;
  p.narrowing_of.fill(-1);
  if (p.complex && !set.narrowings.empty()) throw InvalidArgument("narrowed limits need the real case");
  for (std::size_t k = 0; k < set.narrowings.size(); ++k) {
    const Narrowing& nw = set.narrowings[k];
    const int s = slot_of(nw.row, nw.col);
    if (nw.row >= nw.col || s < 0 || nw.pivot < 0 || nw.pivot > 3 || nw.pivot == nw.row || nw.pivot == nw.col) {
      throw InvalidArgument("bad narrowing specification");
    }
    if (p.narrowing_of[s] >= 0) throw InvalidArgument("a coordinate may be narrowed only once");
    p.narrowing_of[s] = static_cast<int>(k);
  }
  // free coordinates first, then narrowed ones; a narrowed coordinate may not depend on another
  int at = 0;
  for (int s = 0; s < 6; ++s) {
    if (p.narrowing_of[s] < 0) p.order[at++] = s;
  }
  for (int s = 0; s < 6; ++s) {
    if (p.narrowing_of[s] < 0) continue;
    const Narrowing& nw = p.narrowings[p.narrowing_of[s]];
    if (p.narrowing_of[slot_of(nw.row, nw.pivot)] >= 0 || p.narrowing_of[slot_of(nw.col, nw.pivot)] >= 0) {
      throw InvalidArgument("narrowing depends on another narrowed coordinate");
    }
    p.order[at++] = s;
  }
  return p;
}

// 2x2 block partial transpose of a 4x4 matrix: entry (2A+b, 2C+d) <- (2A+d, 2C+b).
std::array<int, 2> pt_source(int r, int c) {
  const int a = r / 2, b = r % 2, cc = c / 2, d = c % 2;
  return {2 * a + d, 2 * cc + b};
}

// Weighted sample from uniforms u[0..dimension).
double sample_weight(const Plan& plan, const double* u) {
  std::array<double, 3> s{u[0], u[1], u[2]};
  std::sort(s.begin(), s.end());
  const std::array<double, 4> diag{s[0], s[1] - s[0], s[2] - s[1], 1.0 - s[2]};
  double weight = 1.0 / 6.0;

  std::array<std::complex<double>, 16> m{};
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = diag[i];

  std::array<double, 6> x{};  // real case values by slot
  const double* v = u + 3;
  for (int k = 0; k < 6; ++k) {
    const int slot = plan.order[k];
    const int i = kOffDiagonal[slot][0];
    const int j = kOffDiagonal[slot][1];
    const double bound = std::sqrt(diag[i] * diag[j]);
    std::complex<double> z;
    if (plan.complex) {
      // area-preserving polar map onto the disk |z| <= bound
      const double rad = bound * std::sqrt(v[2 * k]);
      const double ang = 2.0 * std::numbers::pi * v[2 * k + 1];
      z = std::polar(rad, ang);
      weight *= std::numbers::pi * bound * bound;
    } else {
      double lo = -bound;
      double hi = bound;
      const int nk = plan.narrowing_of[slot];
      if (nk >= 0) {
        const Narrowing& nw = plan.narrowings[nk];
        const double ap = diag[nw.pivot];
        const double xik = x[slot_of(i, nw.pivot)];
        const double xjk = x[slot_of(j, nw.pivot)];
        const double disc = std::max(0.0, (diag[i] * ap - xik * xik) * (diag[j] * ap - xjk * xjk));
        if (!(ap > 0.0)) return 0.0;
        const double centre = xik * xjk / ap;
        const double half = std::sqrt(disc) / ap;
        hi = std::min(hi, centre + half);
        if (!nw.upper_only) lo = std::max(lo, centre - half);
      }
      if (!(hi > lo)) return 0.0;
      x[slot] = lo + (hi - lo) * v[k];
      z = x[slot];
      weight *= hi - lo;
    }
    m[i * 4 + j] = z;
    m[j * 4 + i] = std::conj(z);
  }

  if (plan.ppt) {
    for (const auto& [i, j] : kOffDiagonal) {
      const auto src = pt_source(i, j);
      const double dii = m[i * 4 + i].real();
      const double djj = m[j * 4 + j].real();
      if (std::norm(m[src[0] * 4 + src[1]]) > dii * djj) return 0.0;
    }
  }
  return weight;
}

double to_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

double run_randomization(const Plan& plan, std::int64_t count, std::uint64_t seed, int r, SamplingMode mode) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(r)};
  std::mt19937_64 rng(seq);
  std::array<double, 15> u{};
  double sum = 0.0;
  double compensation = 0.0;
  auto accumulate = [&](double w) {
    // Kahan summation keeps the mean independent of sample count rounding.
    const double y = w - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  };
  if (mode == SamplingMode::plain) {
    for (std::int64_t s = 0; s < count; ++s) {
      for (int d = 0; d < plan.dimension; ++d) u[d] = to_unit(rng());
      accumulate(sample_weight(plan, u.data()));
    }
  } else {
    std::array<std::uint64_t, 15> shift{};
    for (int d = 0; d < plan.dimension; ++d) shift[d] = rng();
    boost::random::sobol engine(plan.dimension);
    for (std::int64_t s = 0; s < count; ++s) {
      for (int d = 0; d < plan.dimension; ++d) u[d] = to_unit(engine() ^ shift[d]);
      accumulate(sample_weight(plan, u.data()));
    }
  }
  return sum / static_cast<double>(count);
}

}  // namespace

MCEstimate minor_volume(const MinorConstraintSet& set, std::int64_t samples, std::uint64_t seed,
                        const SamplerOptions& options) {
  if (options.randomizations < 2) throw InvalidArgument("need at least two randomizations");
  if (samples < kMinSamples) throw InvalidArgument("minor_volume needs at least 1e4 samples");
  if (samples < options.randomizations) throw InvalidArgument("sample count smaller than randomization count");
  const Plan plan = make_plan(set);
  const int reps = options.randomizations;
  const std::int64_t per = samples / reps;
  const double normalization = plan.complex ? 128.0 : 16.0;

  std::vector<double> means(reps);
  const int workers = std::max(1, std::min(options.workers, reps));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
      means[r] = normalization * run_randomization(plan, per, seed, r, options.mode);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  MCEstimate est;
  double total = 0.0;
  for (double m : means) total += m;
  est.mean = total / reps;
  double ss = 0.0;
  for (double m : means) ss += (m - est.mean) * (m - est.mean);
  est.standard_error = std::sqrt(ss / (reps - 1) / reps);
  est.samples = per * reps;
  est.seed = seed;
  est.normalization = normalization;
  est.randomization_means = std::move(means);
  return est;
}

double closed_form_base_real() {
  return 16.0 * 64.0 * std::pow(std::tgamma(2.5), 4) / std::tgamma(10.0);
}

ReferenceConstants reference_constants() {
  const double pi = std::numbers::pi;
  const double pi2 = pi * pi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  ReferenceConstants c{};
  c.real_hs_volume = pi4 / 60480.0;
  c.complex_hs_volume = pi6 / 851350500.0;
  c.conjectured_separable_probability = (4.0 * 3.0 * 49.0 * 11.0 * 13.0 * std::sqrt(3.0)) / (625.0 * pi6);
  c.base_real = pi2 / 1120.0;
  c.ppt_real = 544.0 / 99225.0;
  c.refine1_real = pi2 * (16.0 + pi2) / 35840.0;
  c.refine2_real = pi4 / 26880.0;
  c.base_complex = pi6 / 7882875.0;
  c.ppt_complex = 1964.0 * pi6 / 30435780375.0;
  return c;
}

double reference_value(MatrixCase mc, ConstraintLevel level) {
  const ReferenceConstants c = reference_constants();
  if (mc == MatrixCase::real) {
    switch (level) {
      case ConstraintLevel::base: return c.base_real;
      case ConstraintLevel::ppt: return c.ppt_real;
      case ConstraintLevel::refine1: return c.refine1_real;
      case ConstraintLevel::refine2: return c.refine2_real;
    }
  }
  if (level == ConstraintLevel::base) return c.base_complex;
  if (level == ConstraintLevel::ppt) return c.ppt_complex;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace bloch
