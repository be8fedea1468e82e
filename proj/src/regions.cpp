#include "bloch/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bloch/error.hpp"
#include "bloch/gellmann.hpp"
#include "bloch/quadrature.hpp"

namespace bloch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 2> unit2(double theta) { return {std::cos(theta), std::sin(theta)}; }

Vec3 unit3(double u, double phi) {
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return {s * std::cos(phi), s * std::sin(phi), u};
}

double real_expectation(const std::vector<Complex>& v, const HermitianMatrix& a) {
  const int n = a.dim();
  Complex acc{};
  for (int i = 0; i < n; ++i) {
    Complex row{};
    for (int j = 0; j < n; ++j) row += a(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

}  // namespace

RegionPredicate RegionPredicate::make(SectionSpec spec, std::vector<TransposeSpec> conditions, double tol) {
  spec = SectionSpec::make(spec.n, std::move(spec.gens));
  for (const TransposeSpec& t : conditions) {
    if (t.dimension() != spec.n) {
      throw InvalidArgument("decomposition " + t.label() + " does not factor n = " + std::to_string(spec.n));
    }
  }
  if (!(tol >= 0.0)) throw InvalidArgument("region tolerance must be nonnegative");
  return RegionPredicate{std::move(spec), std::move(conditions), tol};
}

// ---------------------------------------------------------------------------
// RegionModel

RegionModel::RegionModel(RegionPredicate pred)
    : pred_(RegionPredicate::make(std::move(pred.spec), std::move(pred.conditions), pred.tol)) {
  const Section section(pred_.spec);
  axes_.push_back(section.axes());
  for (const TransposeSpec& t : pred_.conditions) {
    std::vector<HermitianMatrix> transposed;
    for (const HermitianMatrix& a : section.axes()) transposed.push_back(partial_transpose(a, t));
    axes_.push_back(std::move(transposed));
  }
}

HermitianMatrix RegionModel::constraint_direction(int k, std::span<const double> u) const {
  const auto& axes = axes_.at(k);
  if (u.size() != axes.size()) throw InvalidArgument("region: coordinate arity mismatch");
  HermitianMatrix d(dim());
  for (std::size_t i = 0; i < axes.size(); ++i) d.add_scaled(axes[i], u[i]);
  return d;
}

HermitianMatrix RegionModel::constraint_matrix(int k, std::span<const double> c) const {
  HermitianMatrix m = constraint_direction(k, c);
  m += HermitianMatrix::identity(dim(), 1.0 / dim());
  return m;
}

double RegionModel::constraint_extent(int k, std::span<const double> u, double tol) const {
  const double lowest = bloch::min_eigenvalue(constraint_direction(k, u));
  if (!(lowest < 0.0)) return kInf;
  return (1.0 / dim() + tol) / -lowest;
}

double RegionModel::extent(std::span<const double> u) const { return extent(u, pred_.tol); }

double RegionModel::extent(std::span<const double> u, double tol) const {
  double r = kInf;
  for (int k = 0; k < constraint_count(); ++k) r = std::min(r, constraint_extent(k, u, tol));
  return r;
}

double RegionModel::min_eigenvalue(std::span<const double> c) const {
  double lowest = kInf;
  for (int k = 0; k < constraint_count(); ++k) lowest = std::min(lowest, bloch::min_eigenvalue(constraint_matrix(k, c)));
  return lowest;
}

// ---------------------------------------------------------------------------
// Radial extent

namespace {

std::vector<double> normalized(std::span<const double> direction, int arity) {
  if (static_cast<int>(direction.size()) != arity) throw InvalidArgument("direction arity mismatch");
  double norm = 0.0;
  for (double x : direction) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw InvalidArgument("direction must be nonzero");
  std::vector<double> u(direction.begin(), direction.end());
  for (double& x : u) x /= norm;
  return u;
}

}  // namespace

double radial_extent(const RegionPredicate& pred, std::span<const double> direction) {
  const RegionModel model(pred);
  return model.extent(normalized(direction, model.arity()));
}

double radial_extent_bisect(const RegionPredicate& pred, std::span<const double> direction, double tol) {
  const RegionModel model(pred);
  const std::vector<double> u = normalized(direction, model.arity());
  std::vector<double> c(u.size());
  auto inside = [&](double r) {
    for (std::size_t i = 0; i < u.size(); ++i) c[i] = r * u[i];
    return model.contains(c);
  };
  if (!inside(0.0)) throw NumericalFailure("radial extent: origin outside region", 0.0);
  double lo = 0.0;
  double hi = bounding_radius(model.dim()) * (1.0 + 1e-6);
  if (inside(hi)) {
    throw NumericalFailure("radial extent: predicate holds at the bounding radius " + std::to_string(hi), hi);
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Measures

namespace {

int measure_components(const RegionModel& model) {
  const int k = model.constraint_count() - 1;
  return 1 + k + (k >= 2 ? 1 : 0);
}

// values[0] = r_total^p, then one per condition, then the joint (if >= 2 conditions)
void measure_powers(const RegionModel& model, std::span<const double> u, int power, std::span<double> out) {
  // The exact boundary (margin 0): a positive margin would inflate areas by 2n*tol.
  const int k = model.constraint_count();
  const double tol = 0.0;
  const double r0 = model.constraint_extent(0, u, tol);
  double joint = r0;
  out[0] = std::pow(r0, power);
  for (int j = 1; j < k; ++j) {
    const double rj = model.constraint_extent(j, u, tol);
    joint = std::min(joint, rj);
    out[j] = std::pow(std::min(r0, rj), power);
  }
  if (k >= 3) out[k] = std::pow(joint, power);
}

RegionMeasures unpack(const RegionModel& model, const AdaptiveResult& res, double scale) {
  const int k = model.constraint_count() - 1;
  RegionMeasures m;
  m.total = scale * res.values[0];
  for (int j = 1; j <= k; ++j) m.per_condition.push_back(scale * res.values[j]);
  if (k == 0) {
    m.joint = m.total;
  } else if (k == 1) {
    m.joint = m.per_condition[0];
  } else {
    m.joint = scale * res.values[k + 1];
  }
  for (double e : res.errors) m.error = std::max(m.error, scale * e);
  m.evaluations = res.evaluations;
  return m;
}

void require_arity(const RegionModel& model, int arity, const char* what) {
  if (model.arity() != arity) {
    throw InvalidArgument(std::string(what) + " needs a " + std::to_string(arity) + "-parameter section, got " +
                          model.predicate().spec.label());
  }
}

}  // namespace

namespace {

constexpr int kCornerGrid = 256;
constexpr int kGoldenIterations = 64;
constexpr double kDistinctBranch = 1e-12;  // relative; closer radii are one branch
constexpr double kCornerGap = 1e-7;        // relative gap accepted as a tie

// Measured components and the constraints each one takes the minimum over.
std::vector<std::vector<int>> component_constraints(const RegionModel& model) {
  const int k = model.constraint_count();
  std::vector<std::vector<int>> sets{{0}};
  for (int j = 1; j < k; ++j) sets.push_back({0, j});
  if (k >= 3) {
    std::vector<int> all(k);
    for (int j = 0; j < k; ++j) all[j] = j;
    sets.push_back(all);
  }
  return sets;
}

// Per component: distance from the binding branch radius to the next distinct one.
struct BranchGaps {
  const RegionModel& model;
  std::vector<std::vector<int>> sets;

  std::vector<double> operator()(double theta) const {
    const auto u = unit2(theta);
    std::vector<std::vector<double>> radii(model.constraint_count());
    for (int k = 0; k < model.constraint_count(); ++k) {
      for (double mu : eigenvalues(model.constraint_direction(k, u))) {
        if (mu < 0.0) radii[k].push_back(1.0 / (model.dim() * -mu));
      }
    }
    std::vector<double> gaps;
    for (const auto& set : sets) {
      std::vector<double> r;
      for (int k : set) r.insert(r.end(), radii[k].begin(), radii[k].end());
      std::sort(r.begin(), r.end());
      double gap = kInf;
      for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i] - r[0] > kDistinctBranch * r[0]) {
          gap = (r[i] - r[0]) / r[0];
          break;
        }
      }
      gaps.push_back(gap);
    }
    return gaps;
  }
};

}  // namespace

std::vector<double> corner_angles_2d(const RegionPredicate& pred) {
  const RegionModel model(pred);
  require_arity(model, 2, "corner search");
  const BranchGaps gaps{model, component_constraints(model)};
  const double h = kTwoPi / kCornerGrid;
  std::vector<std::vector<double>> grid(kCornerGrid);
  for (int i = 0; i < kCornerGrid; ++i) grid[i] = gaps(i * h);

  std::vector<double> corners;
  for (std::size_t s = 0; s < gaps.sets.size(); ++s) {
    for (int i = 0; i < kCornerGrid; ++i) {
      const double g = grid[i][s];
      const double prev = grid[(i + kCornerGrid - 1) % kCornerGrid][s];
      const double next = grid[(i + 1) % kCornerGrid][s];
      if (!(g <= prev && g < next)) continue;
      // golden-section search for the bottom of the V
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double lo = (i - 1) * h, hi = (i + 1) * h;
      double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
      double f1 = gaps(x1)[s], f2 = gaps(x2)[s];
      double best = g, best_x = i * h;
      for (int it = 0; it < kGoldenIterations; ++it) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - phi * (hi - lo);
          f1 = gaps(x1)[s];
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + phi * (hi - lo);
          f2 = gaps(x2)[s];
        }
        for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
          if (f < best) {
            best = f;
            best_x = x;
          }
        }
      }
      if (best < kCornerGap) corners.push_back(std::fmod(best_x + kTwoPi, kTwoPi));
    }
  }
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end(), [](double a, double b) { return b - a < 1e-10; }),
                corners.end());
  return corners;
}

RegionMeasures measure_2d(const RegionPredicate& pred, double rel_tol) {
  const RegionModel model(pred);
  require_arity(model, 2, "area");
  const int m = measure_components(model);
  const VectorIntegrand f = [&](double theta, std::span<double> out) {
    measure_powers(model, unit2(theta), 2, out);
  };
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol;  // tolerance rel_tol * max(A, 1)
  opt.initial_panels = 16;
  if (rel_tol < kCornerSearchBelow) opt.breakpoints = corner_angles_2d(pred);
  return unpack(model, integrate_adaptive(f, m, 0.0, kTwoPi, opt), 0.5);
}

RegionMeasures measure_3d(const RegionPredicate& pred, double rel_tol) {
  const RegionModel model(pred);
  require_arity(model, 3, "volume");
  const int m = measure_components(model);
  AdaptiveOptions inner;
  inner.rel_tol = 0.05 * rel_tol;
  inner.abs_tol = 0.05 * rel_tol;
  inner.initial_panels = 16;
  std::size_t evaluations = 0;
  const VectorIntegrand outer_f = [&](double u, std::span<double> out) {
    const VectorIntegrand inner_f = [&](double phi, std::span<double> o) {
      measure_powers(model, unit3(u, phi), 3, o);
    };
    const AdaptiveResult r = integrate_adaptive(inner_f, m, 0.0, kTwoPi, inner);
    evaluations += r.evaluations;
    std::copy(r.values.begin(), r.values.end(), out.begin());
  };
  AdaptiveOptions outer;
  outer.rel_tol = rel_tol;
  outer.abs_tol = rel_tol;
  outer.initial_panels = 8;
  RegionMeasures res = unpack(model, integrate_adaptive(outer_f, m, -1.0, 1.0, outer), 1.0 / 3.0);
  res.evaluations = evaluations;
  return res;
}

double area_2d(const RegionPredicate& pred, double rel_tol) { return measure_2d(pred, rel_tol).joint; }

double volume_3d(const RegionPredicate& pred, double rel_tol) { return measure_3d(pred, rel_tol).joint; }

// ---------------------------------------------------------------------------
// 2D boundary

std::array<double, 2> RadialProfile::point(std::size_t i) const {
  return {radii[i] * std::cos(angles[i]), radii[i] * std::sin(angles[i])};
}

double RadialProfile::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto a = point(i);
    const auto b = point((i + 1) % angles.size());
    total += std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  return total;
}

namespace {

struct Tracer {
  const RegionModel& model;
  std::size_t evaluations = 0;

  double radius(double theta) {
    ++evaluations;
    return model.extent(unit2(theta), 0.0);
  }
  std::array<double, 2> point(double theta, double r) const { return {r * std::cos(theta), r * std::sin(theta)}; }
  std::array<double, 2> point(double theta) { return point(theta, radius(theta)); }
};

double dist(const std::array<double, 2>& a, const std::array<double, 2>& b) { return std::hypot(b[0] - a[0], b[1] - a[1]); }

void refine(Tracer& tr, double ta, double ra, double tb, double rb, double target, RadialProfile& out) {
  const double tm = 0.5 * (ta + tb);
  const double rm = tr.radius(tm);
  const auto pa = tr.point(ta, ra);
  const auto pb = tr.point(tb, rb);
  const auto pm = tr.point(tm, rm);
  const double excess = dist(pa, pm) + dist(pm, pb) - dist(pa, pb);
  const double width = tb - ta;
  if (excess <= target * width / kTwoPi || width < kTransitionTolerance) {
    out.angles.push_back(tm);
    out.radii.push_back(rm);
    out.angles.push_back(tb);
    out.radii.push_back(rb);
    return;
  }
  refine(tr, ta, ra, tm, rm, target, out);
  refine(tr, tm, rm, tb, rb, target, out);
}

RadialProfile trace(const RegionModel& model, double target_error) {
  if (model.arity() != 2) throw InvalidArgument("boundary tracing needs a 2-parameter section");
  if (!(target_error > 0.0)) throw InvalidArgument("boundary target error must be positive");
  Tracer tr{model};
  constexpr int kInitial = 256;
  std::vector<double> r0(kInitial + 1);
  for (int i = 0; i <= kInitial; ++i) r0[i] = (i == kInitial) ? r0[0] : tr.radius(kTwoPi * i / kInitial);
  RadialProfile out;
  out.angles.push_back(0.0);
  out.radii.push_back(r0[0]);
  for (int i = 0; i < kInitial; ++i) {
    refine(tr, kTwoPi * i / kInitial, r0[i], kTwoPi * (i + 1) / kInitial, r0[i + 1], target_error, out);
  }
  // last pushed vertex is 2 pi == first vertex
  out.angles.pop_back();
  out.radii.pop_back();
  out.evaluations = tr.evaluations;
  out.min_step = kTwoPi;
  for (std::size_t i = 0; i + 1 < out.angles.size(); ++i) {
    out.min_step = std::min(out.min_step, out.angles[i + 1] - out.angles[i]);
  }
  return out;
}

struct Arc {
  double start;
  double end;
  double length;
  bool classified;
};

// Splits the closed polyline into arcs by `classify(theta)`, localizing
// transitions by bisection, then folds contact-point runs into their neighbours.
template <class Classify>
std::vector<Arc> classify_arcs(Tracer& tr, const RadialProfile& profile, Classify&& classify) {
  const std::size_t count = profile.angles.size();
  std::vector<bool> vertex_class(count);
  for (std::size_t i = 0; i < count; ++i) vertex_class[i] = classify(profile.angles[i]);

  auto transition = [&](double lo, bool lo_class, double hi) {
    for (int it = 0; it < kMaxTransitionIterations && hi - lo > kTransitionTolerance; ++it) {
      const double mid = 0.5 * (lo + hi);
      (classify(mid) == lo_class ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < count; ++i) {
    const double ta = profile.angles[i];
    const double tb = (i + 1 == count) ? profile.angles[0] + kTwoPi : profile.angles[i + 1];
    const bool ca = vertex_class[i];
    const bool cb = vertex_class[(i + 1) % count];
    const double tm = 0.5 * (ta + tb);
    const bool cm = classify(tm);
    std::vector<double> breaks{ta};
    if (ca != cm) breaks.push_back(transition(ta, ca, tm));
    if (ca != cm || cm != cb) breaks.push_back(tm);
    if (cm != cb) breaks.push_back(transition(tm, cm, tb));
    breaks.push_back(tb);
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      const double s = breaks[j];
      const double e = breaks[j + 1];
      if (!(e > s)) continue;
      const bool c = (breaks.size() == 2) ? cm : classify(0.5 * (s + e));
      const double len = dist(tr.point(s), tr.point(e));
      arcs.push_back({s, e, len, c});
    }
  }

  // Merge into maximal runs (cyclic).
  std::vector<Arc> runs;
  for (const Arc& a : arcs) {
    if (!runs.empty() && runs.back().classified == a.classified) {
      runs.back().end = a.end;
      runs.back().length += a.length;
    } else {
      runs.push_back(a);
    }
  }
  if (runs.size() > 1 && runs.front().classified == runs.back().classified) {
    runs.back().end = runs.front().end + kTwoPi;
    runs.back().length += runs.front().length;
    runs.erase(runs.begin());
  }
  if (runs.size() > 1) {
    for (Arc& r : runs) {
      if (r.length < kContactLength) r.classified = !r.classified;
    }
  }
  return runs;
}

}  // namespace

RadialProfile boundary_polyline_2d(const RegionPredicate& pred, double target_error) {
  const RegionModel model(pred);
  return trace(model, target_error);
}

BoundaryPartition boundary_partition_2d(const RegionPredicate& pred, const RegionPredicate& classifier,
                                        double target_error) {
  const RegionModel model(pred);
  const RegionModel cls(classifier);
  if (cls.predicate().spec != model.predicate().spec) {
    throw InvalidArgument("classifier must share the section of the region");
  }
  const RadialProfile profile = trace(model, target_error);
  Tracer tr{model};
  const auto classify = [&](double theta) { return cls.contains(tr.point(theta), kClassifierTolerance); };
  BoundaryPartition out;
  for (const Arc& a : classify_arcs(tr, profile, classify)) {
    out.total_length += a.length;
    if (a.classified) {
      out.classified_length += a.length;
      out.classified_runs.emplace_back(a.start, a.end);
    }
  }
  return out;
}

double interior_interface_2d(const RegionPredicate& outer, const RegionPredicate& inner, double target_error) {
  const RegionModel out_model(outer);
  const RegionModel in_model(inner);
  if (out_model.predicate().spec != in_model.predicate().spec) {
    throw InvalidArgument("interface regions must share a section");
  }
  const RadialProfile profile = trace(in_model, target_error);
  Tracer tr{in_model};
  const auto interior = [&](double theta) { return out_model.min_eigenvalue(tr.point(theta)) > kClassifierTolerance; };
  double length = 0.0;
  for (const Arc& a : classify_arcs(tr, profile, interior)) {
    if (a.classified) length += a.length;
  }
  return length;
}

double boundary_length_2d_integral(const RegionPredicate& pred, double rel_tol) {
  const RegionModel model(pred);
  if (model.arity() != 2) throw InvalidArgument("boundary length needs a 2-parameter section");
  const double c = 1.0 / model.dim();
  const auto f = [&](double theta) {
    const auto u = unit2(theta);
    int active = 0;
    double r = kInf;
    for (int k = 0; k < model.constraint_count(); ++k) {
      const double rk = model.constraint_extent(k, u, 0.0);
      if (rk < r) {
        r = rk;
        active = k;
      }
    }
    const Eigensystem es = eigensystem(model.constraint_direction(active, u));
    const double lambda = es.values[0];
    const std::array<double, 2> du{-std::sin(theta), std::cos(theta)};
    const double dlambda = real_expectation(es.vectors[0], model.constraint_direction(active, du));
    const double dr = c * dlambda / (lambda * lambda);
    return std::hypot(r, dr);
  };
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol;
  opt.initial_panels = 64;
  return integrate_adaptive(f, 0.0, kTwoPi, opt);
}

// ---------------------------------------------------------------------------
// 3D surfaces

namespace {

SurfacePartition integrate_surface(const std::function<void(double, double, std::span<double>)>& element,
                                   double rel_tol) {
  AdaptiveOptions inner;
  inner.rel_tol = 0.05 * rel_tol;
  inner.abs_tol = 0.05 * rel_tol;
  inner.initial_panels = 16;
  std::size_t evaluations = 0;
  const VectorIntegrand outer_f = [&](double u, std::span<double> out) {
    const VectorIntegrand inner_f = [&](double phi, std::span<double> o) { element(u, phi, o); };
    const AdaptiveResult r = integrate_adaptive(inner_f, 2, 0.0, kTwoPi, inner);
    evaluations += r.evaluations;
    out[0] = r.values[0];
    out[1] = r.values[1];
  };
  AdaptiveOptions outer;
  outer.rel_tol = rel_tol;
  outer.abs_tol = rel_tol;
  outer.initial_panels = 8;
  const AdaptiveResult res = integrate_adaptive(outer_f, 2, -1.0, 1.0, outer);
  return {res.values[0], res.values[1], evaluations};
}

double fd_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

SurfacePartition star_surface_area(const std::function<double(const Vec3&)>& radius,
                                   const std::function<bool(const Vec3&)>& classify, const SurfaceOptions& options) {
  const double h = options.step;
  const auto element = [&](double u, double phi, std::span<double> out) {
    const double theta = std::acos(std::clamp(u, -1.0, 1.0));
    const double s = std::sin(theta);
    const auto at = [&](double th, double ph) {
      return radius({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
    };
    const Vec3 w = unit3(u, phi);
    const double r = radius(w);
    const double r_theta = fd_derivative([&](double th) { return at(th, phi); }, theta, h);
    const double r_phi = fd_derivative([&](double ph) { return at(theta, ph); }, phi, h);
    const double grad2 = r_theta * r_theta + (r_phi / s) * (r_phi / s);
    const double ds = r * std::sqrt(r * r + grad2);
    out[0] = ds;
    out[1] = classify({r * w[0], r * w[1], r * w[2]}) ? ds : 0.0;
  };
  return integrate_surface(element, options.rel_tol);
}

SurfacePartition surface_area_3d(const RegionPredicate& pred, const RegionPredicate& classifier,
                                 const SurfaceOptions& options) {
  const RegionModel model(pred);
  const RegionModel cls(classifier);
  if (model.arity() != 3) throw InvalidArgument("surface area needs a 3-parameter section");
  if (cls.predicate().spec != model.predicate().spec) {
    throw InvalidArgument("classifier must share the section of the region");
  }
  const auto in_class = [&](const Vec3& p) { return cls.contains(p, kClassifierTolerance); };
  if (options.gradient == SurfaceGradient::finite_difference) {
    return star_surface_area([&](const Vec3& w) { return model.extent(w, 0.0); }, in_class, options);
  }
  // r = c / -lambda(w) with lambda homogeneous of degree one, so the
  // surface element is r^3 |grad lambda| / c with grad_i lambda = <v|A_i|v>.
  const double c = 1.0 / model.dim();
  const auto element = [&](double u, double phi, std::span<double> out) {
    const Vec3 w = unit3(u, phi);
    int active = 0;
    double r = kInf;
    for (int k = 0; k < model.constraint_count(); ++k) {
      const double rk = model.constraint_extent(k, w, 0.0);
      if (rk < r) {
        r = rk;
        active = k;
      }
    }
    const Eigensystem es = eigensystem(model.constraint_direction(active, w));
    double g2 = 0.0;
    for (const HermitianMatrix& a : model.constraint_axes(active)) {
      const double gi = real_expectation(es.vectors[0], a);
      g2 += gi * gi;
    }
    const double ds = r * r * r * std::sqrt(g2) / c;
    out[0] = ds;
    out[1] = in_class({r * w[0], r * w[1], r * w[2]}) ? ds : 0.0;
  };
  return integrate_surface(element, options.rel_tol);
}

}  // namespace bloch
