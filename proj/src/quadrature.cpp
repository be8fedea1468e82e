#include "bloch/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

#include "bloch/error.hpp"

namespace bloch {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; every
// second abscissa is a Gauss point. Values as tabulated in QUADPACK.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  std::vector<double> value;
  std::vector<double> error;
  double worst;
};

// A kink inside a panel can make K15 and G7 agree by accident. Each child
// therefore also carries half the disagreement between its parent's K15 and
// the sum of the two children, which bounds its error from above whenever
// the rule is in its asymptotic regime.
void inherit(const Panel& parent, Panel& left, Panel& right) {
  for (std::size_t c = 0; c < parent.value.size(); ++c) {
    const double gap = 0.5 * std::abs(parent.value[c] - left.value[c] - right.value[c]);
    for (Panel* p : {&left, &right}) {
      p->error[c] = std::max(p->error[c], gap);
      p->worst = std::max(p->worst, p->error[c]);
    }
  }
}

struct PanelOrder {
  const std::vector<Panel>* panels;
  bool operator()(int x, int y) const {
    const Panel& px = (*panels)[x];
    const Panel& py = (*panels)[y];
    if (px.worst != py.worst) return px.worst < py.worst;
    return px.a > py.a;  // ties: leftmost first
  }
};

// Inverse of the Legendre-Vandermonde matrix on the 15 Kronrod nodes
// (ordered as evaluated: centre, then -x_j, +x_j for j = 0..6), so that the
// node values map to the coefficients of the interpolating polynomial.
struct LegendreMap {
  std::array<std::array<double, 15>, 15> inverse{};

  LegendreMap() {
    std::array<double, 15> x{};
    x[0] = 0.0;
    for (int j = 0; j < 7; ++j) {
      x[1 + 2 * j] = -kXgk[j];
      x[2 + 2 * j] = kXgk[j];
    }
    std::array<std::array<double, 30>, 15> aug{};
    for (int i = 0; i < 15; ++i) {
      double p0 = 1.0, p1 = x[i];
      aug[i][0] = p0;
      aug[i][1] = p1;
      for (int k = 2; k < 15; ++k) {
        const double p2 = ((2 * k - 1) * x[i] * p1 - (k - 1) * p0) / k;
        aug[i][k] = p2;
        p0 = p1;
        p1 = p2;
      }
      aug[i][15 + i] = 1.0;
    }
    for (int c = 0; c < 15; ++c) {  // Gauss-Jordan with partial pivoting
      int piv = c;
      for (int r = c + 1; r < 15; ++r)
        if (std::abs(aug[r][c]) > std::abs(aug[piv][c])) piv = r;
      std::swap(aug[c], aug[piv]);
      const double d = aug[c][c];
      for (double& v : aug[c]) v /= d;
      for (int r = 0; r < 15; ++r) {
        if (r == c) continue;
        const double f = aug[r][c];
        if (f == 0.0) continue;
        for (int k = 0; k < 30; ++k) aug[r][k] -= f * aug[c][k];
      }
    }
    // aug now holds V^-1 in its right half, with V[i][k] = P_k(x_i)
    for (int k = 0; k < 15; ++k)
      for (int i = 0; i < 15; ++i) inverse[k][i] = aug[k][15 + i];
  }
};

const LegendreMap& legendre_map() {
  static const LegendreMap map;
  return map;
}

void gk15(const VectorIntegrand& f, int m, double a, double b, Panel& out, std::vector<double>& scratch) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<double> kron(m, 0.0), gauss(m, 0.0);
  std::vector<double> nodes(15 * static_cast<std::size_t>(m));
  f(centre, scratch);
  for (int c = 0; c < m; ++c) {
    kron[c] = kWgk[7] * scratch[c];
    gauss[c] = kWg[3] * scratch[c];
    nodes[c] = scratch[c];
  }
  int slot = 1;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    for (double x : {centre - dx, centre + dx}) {
      f(x, scratch);
      for (int c = 0; c < m; ++c) {
        kron[c] += kWgk[j] * scratch[c];
        if (j % 2 == 1) gauss[c] += kWg[j / 2] * scratch[c];
        nodes[slot * m + c] = scratch[c];
      }
      ++slot;
    }
  }
  out.a = a;
  out.b = b;
  out.value.assign(m, 0.0);
  out.error.assign(m, 0.0);
  out.worst = 0.0;
  const auto& inv = legendre_map().inverse;
  for (int c = 0; c < m; ++c) {
    out.value[c] = kron[c] * half;
    // The two highest Legendre coefficients of the interpolant stay large
    // when the panel holds a corner that K15 - G7 happens to miss.
    double tail = 0.0;
    for (int k : {13, 14}) {
      double coef = 0.0;
      for (int i = 0; i < 15; ++i) coef += inv[k][i] * nodes[i * m + c];
      tail += std::abs(coef);
    }
    out.error[c] = std::max(std::abs((kron[c] - gauss[c]) * half), tail * half);
    out.worst = std::max(out.worst, out.error[c]);
  }
}

}  // namespace

AdaptiveResult integrate_adaptive(const VectorIntegrand& f, int components, double a, double b,
                                  const AdaptiveOptions& options) {
  const int m = components;
  const int initial = std::max(1, options.initial_panels);
  std::vector<Panel> panels;
  panels.reserve(initial * 4);
  std::vector<double> scratch(m);
  std::size_t evaluations = 0;

  std::vector<double> nodes;
  for (int i = 0; i <= initial; ++i) nodes.push_back(i == initial ? b : a + (b - a) * i / initial);
  for (double x : options.breakpoints) {
    if (x > a && x < b) nodes.push_back(x);
  }
  std::sort(nodes.begin(), nodes.end());
  const double merge = 1e-12 * (b - a);
  nodes.erase(std::unique(nodes.begin(), nodes.end(), [&](double x, double y) { return y - x <= merge; }),
              nodes.end());
  if (nodes.back() != b) nodes.back() = b;
  const int count = static_cast<int>(nodes.size()) - 1;

  auto is_break = [&](double x) {
    return std::any_of(options.breakpoints.begin(), options.breakpoints.end(),
                       [&](double y) { return std::abs(x - y) <= merge; });
  };
  // Initial panels come in pairs so that they, too, inherit a parent gap;
  // a pair never straddles a breakpoint.
  for (int i = 0; i < count;) {
    if (i + 1 == count || is_break(nodes[i + 1])) {
      panels.emplace_back();
      gk15(f, m, nodes[i], nodes[i + 1], panels.back(), scratch);
      evaluations += 15;
      i += 1;
      continue;
    }
    Panel parent, left, right;
    gk15(f, m, nodes[i], nodes[i + 2], parent, scratch);
    gk15(f, m, nodes[i], nodes[i + 1], left, scratch);
    gk15(f, m, nodes[i + 1], nodes[i + 2], right, scratch);
    evaluations += 45;
    inherit(parent, left, right);
    panels.push_back(std::move(left));
    panels.push_back(std::move(right));
    i += 2;
  }

  std::priority_queue<int, std::vector<int>, PanelOrder> heap(PanelOrder{&panels});
  for (int i = 0; i < static_cast<int>(panels.size()); ++i) heap.push(i);

  std::vector<double> total(m), error(m);
  auto summarize = [&] {
    std::fill(total.begin(), total.end(), 0.0);
    std::fill(error.begin(), error.end(), 0.0);
    for (const Panel& p : panels) {
      for (int c = 0; c < m; ++c) {
        total[c] += p.value[c];
        error[c] += p.error[c];
      }
    }
  };
  auto converged = [&] {
    double scale = 0.0;
    for (int c = 0; c < m; ++c) scale = std::max(scale, std::abs(total[c]));
    const double tol = std::max(options.abs_tol, options.rel_tol * scale);
    for (int c = 0; c < m; ++c) {
      if (error[c] > tol) return false;
    }
    return true;
  };

  summarize();
  long rounds = 0;
  while (!converged()) {
    if (evaluations + 30 > options.max_evaluations) {
      double worst = 0.0;
      for (double e : error) worst = std::max(worst, e);
      throw NumericalFailure("adaptive quadrature: evaluation budget of " + std::to_string(options.max_evaluations) +
                                 " exhausted (error estimate " + std::to_string(worst) + ")",
                             worst);
    }
    const int idx = heap.top();
    heap.pop();
    const double lo = panels[idx].a;
    const double hi = panels[idx].b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      throw NumericalFailure("adaptive quadrature: panel width underflow", panels[idx].worst);
    }
    Panel left, right;
    gk15(f, m, lo, mid, left, scratch);
    gk15(f, m, mid, hi, right, scratch);
    evaluations += 30;
    inherit(panels[idx], left, right);
    for (int c = 0; c < m; ++c) {
      total[c] += left.value[c] + right.value[c] - panels[idx].value[c];
      error[c] += left.error[c] + right.error[c] - panels[idx].error[c];
    }
    panels[idx] = std::move(left);
    panels.push_back(std::move(right));
    heap.push(idx);
    heap.push(static_cast<int>(panels.size()) - 1);
    if (++rounds % 256 == 0) summarize();  // flush drift from the incremental update
  }

  // Ordered final reduction (left to right).
  std::vector<int> order(panels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return panels[x].a < panels[y].a; });
  AdaptiveResult out;
  out.values.assign(m, 0.0);
  out.errors.assign(m, 0.0);
  for (int i : order) {
    for (int c = 0; c < m; ++c) {
      out.values[c] += panels[i].value[c];
      out.errors[c] += panels[i].error[c];
    }
  }
  out.evaluations = evaluations;
  out.panels = static_cast<int>(panels.size());
  return out;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, const AdaptiveOptions& options) {
  const VectorIntegrand g = [&](double x, std::span<double> out) { out[0] = f(x); };
  return integrate_adaptive(g, 1, a, b, options).values[0];
}

}  // namespace bloch
