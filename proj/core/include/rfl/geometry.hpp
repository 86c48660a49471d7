#pragma once

// Planar primitives shared by the kernel integrals, the construction and the
// measure. Areas are normalized so that the unit disc has area 1 (standard
// area divided by pi).

#include <array>
#include <complex>
#include <cstddef>
#include <optional>

namespace rfl {

using Point = std::complex<double>;

// Relative tolerance of geometric predicates; multiplied by the largest
// input magnitude of the predicate.
inline constexpr double kGeomTol = 1e-12;

struct Disc {
  Point center;
  double radius = 1.0;

  Disc scaled(double factor) const { return {center, radius * factor}; }
};

// Closed, axis-aligned square.
struct Square {
  Point center;
  double side = 1.0;

  double half() const { return 0.5 * side; }
  // Counterclockwise, starting at the lower-left corner.
  std::array<Point, 4> vertices() const;
};

// A(center, outer_radius) = B(center, outer_radius) \ B(center, outer_radius/2),
// optionally intersected with a clip disc.
struct AnnulusCap {
  Point center;
  double outer_radius = 1.0;
  std::optional<Disc> clip;

  double inner_radius() const { return 0.5 * outer_radius; }
};

// Validating constructors; throw std::invalid_argument on non-finite input or
// non-positive size.
Disc make_disc(Point center, double radius);
Square make_square(Point center, double side);
AnnulusCap make_annulus_cap(Point center, double outer_radius,
                            std::optional<Disc> clip = std::nullopt);

bool is_finite(Point z);

double normalized_area(const Disc& d);
double normalized_area(const Square& q);

// m2(d1 ∩ d2) via the two-circle lens formula. Tangency gives 0.
double lens_area(const Disc& d1, const Disc& d2);

// m2(d ∩ q), exact (circular segment antiderivatives).
double disc_square_area(const Disc& d, const Square& q);

struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
};

// Up to two closed intervals inside [-pi, pi].
class AngleSet {
 public:
  void push(AngleInterval iv) { items_[count_++] = iv; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const AngleInterval& operator[](std::size_t i) const { return items_[i]; }
  const AngleInterval* begin() const { return items_.data(); }
  const AngleInterval* end() const { return items_.data() + count_; }
  double measure() const;
  bool contains(double theta) const;

 private:
  std::array<AngleInterval, 2> items_{};
  std::size_t count_ = 0;
};

// {theta : center + t e^{i theta} in clip}. The full circle is returned as
// the single interval [-pi, pi]; a circle meeting the clip in a single point
// returns the empty set.
AngleSet circle_disc_angular_interval(Point center, double t, const Disc& clip);

// The same set described as one arc [mid - half_width, mid + half_width]
// before it is folded into [-pi, pi]. half_width is 0 for the empty set and
// pi for the full circle.
struct Arc {
  double mid = 0.0;
  double half_width = 0.0;
};
Arc circle_disc_arc(Point center, double t, const Disc& clip);

// Euclidean set distances; zero when the sets meet.
double distance(Point p, const Disc& d);
double distance(Point p, const Square& q);
double distance(const Disc& a, const Disc& b);
double distance(const Disc& a, const Square& b);
double distance(const Square& a, const Disc& b);
double distance(const Square& a, const Square& b);
// Distance from a set to the boundary of a square (0 if the set crosses it).
double distance_to_boundary(Point p, const Square& q);
double distance_to_boundary(const Disc& d, const Square& q);

bool contains(const Disc& outer, Point p);
bool contains(const Disc& outer, const Disc& inner);
bool contains(const Disc& outer, const Square& inner);
bool contains(const Square& outer, const Disc& inner);

}  // namespace rfl
