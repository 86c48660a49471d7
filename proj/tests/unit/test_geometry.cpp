#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfl/geometry.hpp"
#include "rfl/quadrature.hpp"
#include "rfl/random.hpp"

using namespace rfl;
using std::numbers::pi;

TEST_SUITE("geometry") {
  TEST_CASE("normalized areas") {
    CHECK(normalized_area(Disc{0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normalized_area(Disc{Point(3, -1), 0.25}) == doctest::Approx(0.0625).epsilon(1e-15));
    const double r = 1.0 / 128, R = 1.0;
    CHECK(normalized_area(Square{0.0, std::sqrt(pi * r * R)}) == doctest::Approx(r * R).epsilon(1e-14));
  }

  TEST_CASE("validating constructors reject bad input") {
    CHECK_THROWS_AS(make_disc(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_disc(Point(NAN, 0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_square(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_annulus_cap(0.0, INFINITY), std::invalid_argument);
    CHECK(make_annulus_cap(0.0, 2.0).inner_radius() == 1.0);
  }

  TEST_CASE("lens area") {
    CHECK(lens_area(Disc{0.0, 1.0}, Disc{0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lens_area(Disc{0.0, 1.0}, Disc{5.0, 1.0}) == 0.0);
    CHECK(lens_area(Disc{0.0, 1.0}, Disc{2.0, 1.0}) == 0.0);
    // Oracle: integrate the vertical chord length of the overlap.
    const auto chord = [](double x) {
      const double top = std::min(std::sqrt(std::max(0.0, 1 - x * x)), std::sqrt(std::max(0.0, 1 - (x - 1) * (x - 1))));
      return Complex(2.0 * top, 0.0);
    };
    QuadratureOptions o;
    o.abs_tol = 1e-13;
    const double oracle = (integrate_gk15_cosine(chord, 0.0, 0.5, o).value.real() +
                           integrate_gk15_cosine(chord, 0.5, 1.0, o).value.real()) / pi;
    CHECK(std::abs(lens_area(Disc{0.0, 1.0}, Disc{1.0, 1.0}) - oracle) < 1e-6);
    CHECK(lens_area(Disc{0.0, 1.0}, Disc{1.0, 1.0}) == doctest::Approx((2 * pi / 3 - std::sqrt(3.0) / 2) / pi).epsilon(1e-13));
  }

  TEST_CASE("lens area is symmetric, monotone and bounded") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
      const Disc a{Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 1.5)};
      const Disc b{Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 1.5)};
      const double ab = lens_area(a, b);
      CHECK(ab == doctest::Approx(lens_area(b, a)).epsilon(1e-12));
      CHECK(ab <= std::min(normalized_area(a), normalized_area(b)) + 1e-14);
      CHECK(lens_area(a.scaled(1.1), b) >= ab - 1e-14);
    }
  }

  TEST_CASE("disc-square area") {
    CHECK(disc_square_area(Disc{0.0, 1.0}, Square{0.0, 4.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(disc_square_area(Disc{0.0, 10.0}, Square{Point(1, 1), 0.5}) == doctest::Approx(0.25 / pi).epsilon(1e-14));
    CHECK(disc_square_area(Disc{0.0, 1.0}, Square{Point(5, 5), 1.0}) == 0.0);
    // Quarter disc in the first quadrant.
    CHECK(disc_square_area(Disc{0.0, 1.0}, Square{Point(1, 1), 2.0}) == doctest::Approx(0.25).epsilon(1e-13));
  }

  TEST_CASE("circle-disc angular interval") {
    const auto full = circle_disc_angular_interval(0.0, 0.5, Disc{0.0, 1.0});
    REQUIRE(full.size() == 1);
    CHECK(full[0].lo == doctest::Approx(-pi));
    CHECK(full[0].hi == doctest::Approx(pi));
    CHECK(circle_disc_angular_interval(0.0, 3.0, Disc{0.0, 1.0}).empty());
    CHECK(circle_disc_angular_interval(Point(10, 0), 1.0, Disc{0.0, 1.0}).empty());

    const Disc clip{Point(0, 1), 1.0};
    for (double t : {0.3, 0.5, 0.9, 1.0, 1.7}) {
      const auto s = circle_disc_angular_interval(0.0, t, clip);
      REQUIRE(s.size() == 1);
      CHECK(s[0].lo == doctest::Approx(std::asin(t / 2)).epsilon(1e-12));
      CHECK(s[0].hi == doctest::Approx(pi - std::asin(t / 2)).epsilon(1e-12));
    }
  }

  TEST_CASE("angular interval agrees with membership sampling") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const Point c(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const Disc clip{Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 1.5)};
      const double t = rng.uniform(0.05, 2.5);
      const auto s = circle_disc_angular_interval(c, t, clip);
      int mismatches = 0;
      for (int k = 0; k < 1000; ++k) {
        const double th = -pi + 2 * pi * (k + 0.5) / 1000;
        const double d = std::abs(c + std::polar(t, th) - clip.center) - clip.radius;
        if (std::abs(d) < 1e-9) continue;
        mismatches += (d < 0) != s.contains(th);
      }
      CHECK(mismatches == 0);
    }
  }

  TEST_CASE("distances") {
    CHECK(distance_to_boundary(Disc{0.0, 0.3}, Square{0.0, 2.0}) == doctest::Approx(0.7));
    CHECK(distance(Disc{0.0, 1.0}, Disc{0.0, 1.0}) == 0.0);
    CHECK(distance(Square{0.0, 1.0}, Square{0.0, 1.0}) == 0.0);
    CHECK(distance(Disc{0.0, 1.0}, Disc{3.0, 1.0}) == doctest::Approx(1.0));
    CHECK(distance(Disc{0.0, 1.0}, Square{Point(3, 0), 2.0}) == doctest::Approx(1.0));
    CHECK(distance(Point(3, 4), Square{0.0, 2.0}) == doctest::Approx(std::hypot(2.0, 3.0)));
  }

  TEST_CASE("translation and rotation invariance") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const Disc a{Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 1)};
      const Disc b{Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 1)};
      const Point shift(rng.uniform(-5, 5), rng.uniform(-5, 5));
      const Point rot = std::polar(1.0, rng.angle());
      const auto move = [&](Disc d) { return Disc{d.center * rot + shift, d.radius}; };
      CHECK(std::abs(lens_area(move(a), move(b)) - lens_area(a, b)) < 1e-12);
      CHECK(std::abs(distance(move(a), move(b)) - distance(a, b)) < 1e-12);
      const double t = rng.uniform(0.1, 2);
      CHECK(std::abs(circle_disc_angular_interval(shift, t, move(b)).measure() -
                     circle_disc_angular_interval(0.0, t, Disc{b.center * rot, b.radius}).measure()) < 1e-12);
    }
  }
}
