#include "rfl/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace rfl {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  Complex value;
  double error = 0.0;
  double l1 = 0.0;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie break
  }
};

// GK15 on a single panel. Kronrod nodes at odd indices of the boost table,
// shared Gauss/Kronrod nodes at even indices (index 0 is the midpoint).
Panel gk15_panel(const ComplexIntegrand& f, double a, double b) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const Complex f0 = f(c);
  Complex kronrod = f0 * wk[0];
  Complex gauss = f0 * wg[0];
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Complex fp = f(c + h * x[i]);
    const Complex fm = f(c - h * x[i]);
    kronrod += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * h;
  p.l1 = l1 * std::abs(h);
  const double eps = std::numeric_limits<double>::epsilon();
  p.error = std::max(std::abs((kronrod - gauss) * h), 50.0 * eps * p.l1);
  return p;
}

}  // namespace

QuadratureResult integrate_gk15(const ComplexIntegrand& f, double a, double b,
                                const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) return out;

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  heap.push(gk15_panel(f, a, b));
  out.panels = 1;
  double err = heap.top().error;
  double l1 = heap.top().l1;

  const auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * l1); };
  while (err > target() && out.panels < opts.max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) break;
    heap.pop();
    Panel left = gk15_panel(f, worst.a, mid);
    Panel right = gk15_panel(f, mid, worst.b);
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++out.panels;
  }

  // Resum in interval order so the result does not depend on heap history.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [a, b](const Panel& x, const Panel& y) { return (a < b) ? x.a < y.a : x.a > y.a; });
  CompensatedComplexSum value;
  double total_err = 0.0;
  double total_l1 = 0.0;
  for (const auto& p : panels) {
    value.add(p.value);
    total_err += p.error;
    total_l1 += p.l1;
  }
  out.value = value.value();
  out.error = total_err;
  out.l1 = total_l1;
  out.converged = total_err <= std::max(opts.abs_tol, opts.rel_tol * total_l1);
  return out;
}

QuadratureResult integrate_gk15_cosine(const ComplexIntegrand& f, double a, double b,
                                       const QuadratureOptions& opts) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const ComplexIntegrand g = [&](double phi) {
    return f(mid - half * std::cos(phi)) * (half * std::sin(phi));
  };
  return integrate_gk15(g, 0.0, std::numbers::pi, opts);
}

}  // namespace rfl
