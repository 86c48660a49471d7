#include "rfl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;

double scale_of(std::initializer_list<double> xs) {
  double s = 1.0;
  for (double x : xs) s = std::max(s, std::abs(x));
  return s;
}

// x - sin(x), accurate for small x.
double x_minus_sin(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return x - std::sin(x);
}

// Area of the circular segment cut from a disc of radius r by a chord whose
// half-angle (seen from the center) is a.
double segment_area(double r, double a) { return 0.5 * r * r * x_minus_sin(2.0 * a); }

// Area of {0 <= X <= x, 0 <= Y <= y} ∩ B(0, R) for x, y >= 0 (standard area).
double quadrant_area(double x, double y, double R) {
  x = std::min(x, R);
  y = std::min(y, R);
  if (x * x + y * y <= R * R) return x * y;
  const auto S = [R](double X) {
    const double c = std::clamp(X / R, -1.0, 1.0);
    return 0.5 * (X * std::sqrt(std::max(0.0, R * R - X * X)) + R * R * std::asin(c));
  };
  const double x0 = std::sqrt(std::max(0.0, R * R - y * y));
  return y * x0 + S(x) - S(x0);
}

double signed_quadrant_area(double x, double y, double R) {
  const double s = (x < 0 ? -1.0 : 1.0) * (y < 0 ? -1.0 : 1.0);
  return s * quadrant_area(std::abs(x), std::abs(y), R);
}

}  // namespace

std::array<Point, 4> Square::vertices() const {
  const double h = half();
  return {center + Point(-h, -h), center + Point(h, -h), center + Point(h, h),
          center + Point(-h, h)};
}

bool is_finite(Point z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Disc make_disc(Point center, double radius) {
  if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0))
    throw std::invalid_argument("disc needs a finite center and a positive radius");
  return {center, radius};
}

Square make_square(Point center, double side) {
  if (!is_finite(center) || !std::isfinite(side) || !(side > 0.0))
    throw std::invalid_argument("square needs a finite center and a positive side");
  return {center, side};
}

AnnulusCap make_annulus_cap(Point center, double outer_radius, std::optional<Disc> clip) {
  if (!is_finite(center) || !std::isfinite(outer_radius) || !(outer_radius > 0.0))
    throw std::invalid_argument("annulus needs a finite center and a positive radius");
  if (clip) (void)make_disc(clip->center, clip->radius);
  return {center, outer_radius, clip};
}

double normalized_area(const Disc& d) { return d.radius * d.radius; }

double normalized_area(const Square& q) { return q.side * q.side / kPi; }

double lens_area(const Disc& d1, const Disc& d2) {
  const double r1 = d1.radius;
  const double r2 = d2.radius;
  const double d = std::abs(d1.center - d2.center);
  const double tol = kGeomTol * scale_of({std::abs(d1.center), std::abs(d2.center), r1, r2});
  if (d >= r1 + r2 - tol) return 0.0;
  const double rmin = std::min(r1, r2);
  if (d <= std::abs(r1 - r2)) return rmin * rmin;
  // Half-angles of the common chord seen from each center.
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
  const double area = segment_area(r1, std::acos(c1)) + segment_area(r2, std::acos(c2));
  return std::clamp(area / kPi, 0.0, rmin * rmin);
}

double disc_square_area(const Disc& d, const Square& q) {
  const double R = d.radius;
  const Point o = q.center - d.center;
  const double h = q.half();
  const double x1 = o.real() - h, x2 = o.real() + h;
  const double y1 = o.imag() - h, y2 = o.imag() + h;
  const double a = signed_quadrant_area(x2, y2, R) - signed_quadrant_area(x1, y2, R) -
                   signed_quadrant_area(x2, y1, R) + signed_quadrant_area(x1, y1, R);
  return std::max(0.0, a) / kPi;
}

double AngleSet::measure() const {
  double m = 0.0;
  for (const auto& iv : *this) m += iv.length();
  return m;
}

bool AngleSet::contains(double theta) const {
  for (const auto& iv : *this)
    if (theta >= iv.lo && theta <= iv.hi) return true;
  return false;
}

Arc circle_disc_arc(Point center, double t, const Disc& clip) {
  const Point v = clip.center - center;
  const double D = std::abs(v);
  const double rho = clip.radius;
  if (D + t <= rho) return {0.0, kPi};
  // Half-angle form.
  const double num = (D + rho - t) * (t + rho - D);
  if (!(num > 0.0)) return {0.0, 0.0};
  const double den = std::max(0.0, (t + D + rho) * (t + D - rho));
  return {std::arg(v), 2.0 * std::atan2(std::sqrt(num), std::sqrt(den))};
}

AngleSet circle_disc_angular_interval(Point center, double t, const Disc& clip) {
  AngleSet out;
  const Arc arc = circle_disc_arc(center, t, clip);
  if (arc.half_width <= 0.0) return out;
  if (arc.half_width >= kPi) {
    out.push({-kPi, kPi});
    return out;
  }
  const double lo = arc.mid - arc.half_width;
  const double hi = arc.mid + arc.half_width;
  if (lo < -kPi) {
    out.push({-kPi, hi});
    out.push({lo + 2.0 * kPi, kPi});
  } else if (hi > kPi) {
    out.push({-kPi, hi - 2.0 * kPi});
    out.push({lo, kPi});
  } else {
    out.push({lo, hi});
  }
  return out;
}

double distance(Point p, const Disc& d) { return std::max(0.0, std::abs(p - d.center) - d.radius); }

double distance(Point p, const Square& q) {
  const Point o = p - q.center;
  const double dx = std::max(0.0, std::abs(o.real()) - q.half());
  const double dy = std::max(0.0, std::abs(o.imag()) - q.half());
  return std::hypot(dx, dy);
}

double distance(const Disc& a, const Disc& b) {
  return std::max(0.0, std::abs(a.center - b.center) - a.radius - b.radius);
}

double distance(const Disc& a, const Square& b) { return std::max(0.0, distance(a.center, b) - a.radius); }

double distance(const Square& a, const Disc& b) { return distance(b, a); }

double distance(const Square& a, const Square& b) {
  const Point o = a.center - b.center;
  const double reach = a.half() + b.half();
  const double dx = std::max(0.0, std::abs(o.real()) - reach);
  const double dy = std::max(0.0, std::abs(o.imag()) - reach);
  return std::hypot(dx, dy);
}

double distance_to_boundary(Point p, const Square& q) {
  const Point o = p - q.center;
  const double h = q.half();
  if (std::abs(o.real()) <= h && std::abs(o.imag()) <= h)
    return std::min(h - std::abs(o.real()), h - std::abs(o.imag()));
  return distance(p, q);
}

double distance_to_boundary(const Disc& d, const Square& q) {
  return std::max(0.0, distance_to_boundary(d.center, q) - d.radius);
}

bool contains(const Disc& outer, Point p) {
  const double tol = kGeomTol * scale_of({std::abs(outer.center), std::abs(p), outer.radius});
  return std::abs(p - outer.center) <= outer.radius + tol;
}

bool contains(const Disc& outer, const Disc& inner) {
  const double tol =
      kGeomTol * scale_of({std::abs(outer.center), std::abs(inner.center), outer.radius});
  return std::abs(inner.center - outer.center) + inner.radius <= outer.radius + tol;
}

bool contains(const Disc& outer, const Square& inner) {
  for (const Point& v : inner.vertices())
    if (!contains(outer, v)) return false;
  return true;
}

bool contains(const Square& outer, const Disc& inner) {
  const Point o = inner.center - outer.center;
  const double tol = kGeomTol * scale_of({std::abs(outer.center), std::abs(inner.center), outer.side});
  return std::abs(o.real()) + inner.radius <= outer.half() + tol &&
         std::abs(o.imag()) + inner.radius <= outer.half() + tol;
}

}  // namespace rfl
