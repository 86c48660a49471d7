#include "rfl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rfl/oracle.hpp"

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const Complex kI{0.0, 1.0};

// ∫_alpha^beta e^{-i k theta} dtheta
Complex arc_moment(int k, double alpha, double beta) {
  return (std::polar(1.0, -k * alpha) - std::polar(1.0, -k * beta)) / (kI * double(k));
}

double polygon_signed_area(std::span<const Point> v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % v.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

double segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = std::norm(d);
  double s = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

}  // namespace

int winding(KernelKind kind) { return kind == KernelKind::cauchy ? 1 : 3; }

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::cauchy ? "cauchy" : "conj_over_square";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::boundary_reduction: return "boundary_reduction";
    case Method::radial_reduction: return "radial_reduction";
    case Method::adaptive_quadrature: return "adaptive_quadrature";
  }
  return "unknown";
}

Complex eval_kernel(Point z) {
  if (z == Point(0.0, 0.0)) throw std::domain_error("kernel evaluated at z = 0");
  return std::conj(z) / (z * z);
}

Complex eval_kernel(Point z, KernelKind kind) {
  if (kind == KernelKind::conj_over_square) return eval_kernel(z);
  if (z == Point(0.0, 0.0)) throw std::domain_error("kernel evaluated at z = 0");
  return 1.0 / z;
}

IntegralResult disc_integral(const Disc& d, Point omega) {
  const Point w = omega - d.center;
  const double aw = std::abs(w);
  IntegralResult out;
  out.method = Method::closed_form;
  if (aw <= d.radius) return out;  // reflectionless: exactly zero inside
  const double r2 = d.radius * d.radius;
  const Complex inv_w = 1.0 / w;
  out.value = r2 * std::conj(w) * inv_w * inv_w - r2 * r2 * inv_w * inv_w * inv_w;
  out.error_bound = 8.0 * kEps * (r2 / aw + r2 * r2 / (aw * aw * aw));
  return out;
}

IntegralResult polygon_integral(std::span<const Point> vertices, Point omega) {
  if (vertices.size() < 3) throw std::invalid_argument("degenerate polygon: fewer than 3 vertices");
  double scale = std::max(1.0, std::abs(omega));
  for (const Point& v : vertices) {
    if (!is_finite(v)) throw std::invalid_argument("polygon vertex is not finite");
    scale = std::max(scale, std::abs(v));
  }
  const double area = polygon_signed_area(vertices);
  if (std::abs(area) <= kGeomTol * scale * scale) throw std::invalid_argument("degenerate polygon: zero area");
  if (area < 0.0) throw std::invalid_argument("polygon must be counterclockwise");

  double min_edge_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    min_edge_dist = std::min(min_edge_dist,
                             segment_distance(omega, vertices[i], vertices[(i + 1) % vertices.size()]));
  if (min_edge_dist <= kGeomTol * scale) {
    Polygon poly{std::vector<Point>(vertices.begin(), vertices.end())};
    return adaptive_quadrature(poly, omega, 1e-12);
  }

  CompensatedComplexSum total;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Complex A = vertices[i] - omega;
    const Complex B = vertices[(i + 1) % vertices.size()] - omega;
    const Complex d = B - A;
    if (d == Complex(0.0, 0.0)) continue;
    // On the edge line conj(u) = alpha + beta u.
    const Complex beta = std::conj(d) / d;
    const Complex alpha = std::conj(A) - beta * A;
    const Complex log_ratio = std::log(B / A);
    if (std::abs(log_ratio.imag()) >= kPi)
      throw std::logic_error("edge subtends an angle of pi; pole on the edge line segment");
    const Complex terms[3] = {alpha * alpha * (1.0 / A - 1.0 / B), 2.0 * alpha * beta * log_ratio,
                              beta * beta * d};
    for (const Complex& t : terms) total.add(-0.5 * t);
  }
  IntegralResult out;
  out.method = Method::boundary_reduction;
  out.value = total.value() / (2.0 * kI) / kPi;
  out.error_bound = 32.0 * kEps * total.abs_total() / kPi;
  return out;
}

IntegralResult square_integral(const Square& q, Point omega) {
  const auto v = q.vertices();
  return polygon_integral(std::span<const Point>(v.data(), v.size()), omega);
}

namespace {

// Half-width of the arc of |xi - center| = D + s inside a disc of radius rho
// whose center is at distance D.
double arc_half_width(double D, double rho, double s) {
  if (2.0 * D + s <= rho) return kPi;
  const double num = (rho - s) * (rho + s);
  if (!(num > 0.0)) return 0.0;
  const double den = std::max(0.0, (2.0 * D + s + rho) * (2.0 * D + s - rho));
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

}  // namespace

IntegralResult radial_clip_integral(Point center, double t_lo, double t_hi, const Disc& clip,
                                    const RadialOptions& opts) {
  IntegralResult out;
  out.method = Method::radial_reduction;
  if (!(t_hi > t_lo)) return out;

  const int k = winding(opts.kernel);
  const Point v = clip.center - center;
  const double D = std::abs(v);
  const double rho = clip.radius;
  const double phi = std::arg(v);

  // Radial variable s = t - D.
  const double s_lo = t_lo - D;
  const double s_hi = t_hi - D;
  std::vector<double> cuts{s_lo, s_hi, D >= rho ? -rho : rho - 2.0 * D, rho};
  if (opts.window) {
    // Radii where an arc endpoint crosses a window edge.
    for (double edge : {opts.window->lo, opts.window->hi}) {
      const double c = std::cos(edge - phi);
      const double sn = std::sin(edge - phi);
      const double disc = rho * rho - D * D * sn * sn;
      if (disc < 0.0) continue;
      cuts.push_back(D * c + std::sqrt(disc) - D);
      cuts.push_back(D * c - std::sqrt(disc) - D);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double x) { return x < s_lo || x > s_hi; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto angular = [&](double s) -> Complex {
    if (!opts.window) {
      const double hw = arc_half_width(D, rho, s);
      if (hw <= 0.0 || hw >= kPi) return {};
      return std::polar(2.0 * std::sin(k * hw) / k, -k * phi);
    }
    Complex acc;
    for (const auto& iv : circle_disc_angular_interval(center, D + s, clip)) {
      const double lo = std::max(iv.lo, opts.window->lo);
      const double hi = std::min(iv.hi, opts.window->hi);
      if (hi > lo) acc += arc_moment(k, lo, hi);
    }
    return acc;
  };

  QuadratureOptions qopts;
  qopts.abs_tol = opts.abs_tol;
  qopts.rel_tol = opts.rel_tol;
  qopts.max_panels = opts.max_panels;

  CompensatedComplexSum total;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    const double hw = arc_half_width(D, rho, 0.5 * (a + b));
    if (hw <= 0.0) continue;
    if (hw >= kPi) {
      // Whole circle inside the clip: only a window leaves anything behind.
      if (opts.window) total.add(arc_moment(k, opts.window->lo, opts.window->hi) * (b - a));
      continue;
    }
    const QuadratureResult q = integrate_gk15_cosine(angular, a, b, qopts);
    total.add(q.value);
    err += q.error;
    out.converged = out.converged && q.converged;
  }
  out.value = -total.value() / kPi;
  out.error_bound = (err + 4.0 * kEps * total.abs_total()) / kPi;
  return out;
}

IntegralResult annulus_cap_integral(const AnnulusCap& cap, const RadialOptions& opts) {
  if (!cap.clip) {
    IntegralResult out;
    out.method = Method::closed_form;
    if (opts.window) {
      // Sector of a full annulus: separable.
      const int k = winding(opts.kernel);
      out.value = -arc_moment(k, opts.window->lo, opts.window->hi) *
                  (cap.outer_radius - cap.inner_radius()) / kPi;
      out.error_bound = 8.0 * kEps * std::abs(out.value);
    }
    return out;
  }
  return radial_clip_integral(cap.center, cap.inner_radius(), cap.outer_radius, *cap.clip, opts);
}

double abs_kernel_mass_bound(const Disc& d) { return 2.0 * std::sqrt(normalized_area(d)); }

double abs_kernel_mass_bound(const Square& q) { return 2.0 * std::sqrt(normalized_area(q)); }

}  // namespace rfl
