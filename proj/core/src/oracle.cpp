#include "rfl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;

using Intervals = std::vector<std::pair<double, double>>;

struct Circle {
  Point center;
  double radius;
};

double wrap_angle(double a) {
  while (a <= -kPi) a += 2.0 * kPi;
  while (a > kPi) a -= 2.0 * kPi;
  return a;
}

// Parameter interval of the ray omega + t u (t >= 0) inside a closed disc.
Intervals ray_disc(const Circle& c, Point omega, Point u) {
  const Point w = omega - c.center;
  const double b = (std::conj(u) * w).real();
  const double cc = std::norm(w) - c.radius * c.radius;
  const double disc = b * b - cc;
  if (disc <= 0.0) return {};
  const double s = std::sqrt(disc);
  const double t0 = std::max(0.0, -b - s);
  const double t1 = -b + s;
  if (t1 <= t0) return {};
  return {{t0, t1}};
}

Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const double lo = std::max(x.first, y.first);
      const double hi = std::min(x.second, y.second);
      if (hi > lo) out.emplace_back(lo, hi);
    }
  std::sort(out.begin(), out.end());
  return out;
}

Intervals subtract(const Intervals& a, const Intervals& b) {
  Intervals cur = a;
  for (const auto& y : b) {
    Intervals next;
    for (const auto& x : cur) {
      if (y.second <= x.first || y.first >= x.second) {
        next.push_back(x);
        continue;
      }
      if (y.first > x.first) next.emplace_back(x.first, y.first);
      if (y.second < x.second) next.emplace_back(y.second, x.second);
    }
    cur = std::move(next);
  }
  return cur;
}

bool point_in_polygon(const std::vector<Point>& v, Point p) {
  // Nonzero winding number.
  int wn = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    const double cross = (b.real() - a.real()) * (p.imag() - a.imag()) -
                         (p.real() - a.real()) * (b.imag() - a.imag());
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && cross > 0) ++wn;
    } else if (b.imag() <= p.imag() && cross < 0) {
      --wn;
    }
  }
  return wn != 0;
}

Intervals ray_polygon(const std::vector<Point>& v, Point omega, Point u) {
  std::vector<double> ts{0.0};
  double tmax = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point e = v[(i + 1) % v.size()] - a;
    const Point r = a - omega;
    // omega + t u = a + s e
    const double den = u.real() * (-e.imag()) - u.imag() * (-e.real());
    tmax = std::max(tmax, std::abs(r) + std::abs(e));
    if (den == 0.0) continue;
    const double t = (r.real() * (-e.imag()) - r.imag() * (-e.real())) / den;
    const double s = (u.real() * r.imag() - u.imag() * r.real()) / den;
    if (t > 0.0 && s >= 0.0 && s <= 1.0) ts.push_back(t);
  }
  ts.push_back(2.0 * tmax + 1.0);
  std::sort(ts.begin(), ts.end());
  Intervals out;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double lo = ts[i];
    const double hi = ts[i + 1];
    if (!(hi > lo)) continue;
    if (!point_in_polygon(v, omega + 0.5 * (lo + hi) * u)) continue;
    if (!out.empty() && out.back().second == lo)
      out.back().second = hi;
    else
      out.emplace_back(lo, hi);
  }
  return out;
}

std::vector<Point> as_vertices(const Region& region) {
  if (const auto* q = std::get_if<Square>(&region)) {
    const auto v = q->vertices();
    return {v.begin(), v.end()};
  }
  if (const auto* p = std::get_if<Polygon>(&region)) return p->vertices;
  return {};
}

std::vector<Circle> circles_of(const Region& region) {
  if (const auto* d = std::get_if<Disc>(&region)) return {{d->center, d->radius}};
  if (const auto* a = std::get_if<AnnulusCap>(&region)) {
    std::vector<Circle> cs{{a->center, a->outer_radius}, {a->center, a->inner_radius()}};
    if (a->clip) cs.push_back({a->clip->center, a->clip->radius});
    return cs;
  }
  return {};
}

}  // namespace

std::vector<std::pair<double, double>> ray_intervals(const Region& region, Point omega, double theta) {
  const Point u = std::polar(1.0, theta);
  if (const auto* d = std::get_if<Disc>(&region)) return ray_disc({d->center, d->radius}, omega, u);
  if (const auto* a = std::get_if<AnnulusCap>(&region)) {
    Intervals ring = subtract(ray_disc({a->center, a->outer_radius}, omega, u),
                              ray_disc({a->center, a->inner_radius()}, omega, u));
    if (a->clip) ring = intersect(ring, ray_disc({a->clip->center, a->clip->radius}, omega, u));
    return ring;
  }
  return ray_polygon(as_vertices(region), omega, u);
}

std::vector<double> topology_angles(const Region& region, Point omega) {
  std::vector<double> angles;
  for (const Point& v : as_vertices(region))
    if (v != omega) angles.push_back(std::arg(v - omega));

  const auto cs = circles_of(region);
  for (const auto& c : cs) {
    const Point w = c.center - omega;
    const double D = std::abs(w);
    if (D > c.radius) {
      const double h = std::asin(c.radius / D);
      angles.push_back(wrap_angle(std::arg(w) - h));
      angles.push_back(wrap_angle(std::arg(w) + h));
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const Point w = cs[j].center - cs[i].center;
      const double d = std::abs(w);
      const double r1 = cs[i].radius;
      const double r2 = cs[j].radius;
      if (d == 0.0 || d >= r1 + r2 || d <= std::abs(r1 - r2)) continue;
      const double x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
      const double y = std::sqrt(std::max(0.0, r1 * r1 - x * x));
      const Point e = w / d;
      for (double sign : {-1.0, 1.0}) {
        const Point p = cs[i].center + e * Point(x, sign * y);
        if (p != omega) angles.push_back(std::arg(p - omega));
      }
    }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  return angles;
}

IntegralResult adaptive_quadrature(const Region& region, Point omega, double tol,
                                   const OracleOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: tol must be positive");

  std::vector<double> cuts{-kPi};
  for (double a : topology_angles(region, omega))
    if (a > -kPi && a < kPi) cuts.push_back(a);
  cuts.push_back(kPi);

  // Radial integrand along one ray: t * f(omega + t u) with the area
  // element t dt dtheta / pi.
  const auto ray_integral = [&](double theta) -> Complex {
    const Point u = std::polar(1.0, theta);
    Complex acc;
    for (const auto& [t0, t1] : ray_intervals(region, omega, theta)) {
      const ComplexIntegrand g = [&](double t) -> Complex {
        const Point xi = omega + t * u;
        const Complex k = eval_kernel(omega - xi, opts.kernel);
        return opts.absolute ? Complex(t * std::abs(k), 0.0) : t * k;
      };
      QuadratureOptions inner;
      inner.abs_tol = 1e-3 * tol;
      inner.rel_tol = 1e-13;
      acc += integrate_gk15(g, t0, t1, inner).value;
    }
    return acc / kPi;
  };

  QuadratureOptions outer;
  outer.abs_tol = 0.5 * tol / double(cuts.size() - 1);
  outer.max_panels = opts.max_panels_per_arc;

  IntegralResult out;
  out.method = Method::adaptive_quadrature;
  CompensatedComplexSum total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    const QuadratureResult q = integrate_gk15_cosine(ray_integral, cuts[i], cuts[i + 1], outer);
    total.add(q.value);
    out.error_bound += q.error;
    out.converged = out.converged && q.converged;
  }
  out.value = total.value();
  out.converged = out.converged && out.error_bound <= tol;
  return out;
}

}  // namespace rfl
