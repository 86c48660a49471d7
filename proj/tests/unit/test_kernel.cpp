#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfl/experiments.hpp"
#include "rfl/kernel.hpp"
#include "rfl/oracle.hpp"
#include "rfl/random.hpp"

using namespace rfl;
using std::numbers::pi;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("kernel values") {
    CHECK(eval_kernel(1.0) == Complex(1.0, 0.0));
    CHECK(close(eval_kernel(Point(0, 1)), Complex(0, 1), 1e-16));
    CHECK(eval_kernel(2.0) == Complex(0.5, 0.0));
    CHECK_THROWS_AS(eval_kernel(0.0), std::domain_error);
    for (double th : {0.1, 1.0, 2.5, -2.0})
      CHECK(close(eval_kernel(std::polar(3.0, th)), std::polar(1.0 / 3, -3 * th), 1e-15));
  }

  TEST_CASE("oddness, homogeneity, rotation covariance") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const Point z(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const double lam = rng.uniform(0.1, 10);
      const double th = rng.angle();
      CHECK(close(eval_kernel(-z), -eval_kernel(z), 1e-14 * std::abs(eval_kernel(z))));
      CHECK(close(eval_kernel(lam * z), eval_kernel(z) / lam, 1e-13 * std::abs(eval_kernel(z))));
      CHECK(close(eval_kernel(std::polar(1.0, th) * z), std::polar(1.0, -3 * th) * eval_kernel(z), 1e-13 * std::abs(eval_kernel(z))));
      CHECK(std::abs(eval_kernel(z)) == doctest::Approx(1 / std::abs(z)).epsilon(1e-14));
    }
  }

  TEST_CASE("disc integral closed form") {
    const Disc unit{0.0, 1.0};
    CHECK(disc_integral(unit, Point(0.3, 0.4)).value == Complex(0.0, 0.0));
    CHECK(disc_integral(unit, 1.0).value == Complex(0.0, 0.0));
    CHECK(disc_integral(unit, 2.0).value.real() == doctest::Approx(0.375).epsilon(1e-15));
    const auto oracle = adaptive_quadrature(unit, 2.0, 1e-10);
    CHECK(oracle.converged);
    CHECK(std::abs(oracle.value - 0.375) < 1e-8);
    const auto boundary = adaptive_quadrature(unit, 1.0, 1e-9);
    CHECK(std::abs(boundary.value) < 1e-8);
    // Just outside: the exterior branch is continuous at the boundary.
    CHECK(std::abs(disc_integral(unit, 1.0 + 1e-9).value) < 1e-8);
  }

  TEST_CASE("reflectionless: interior points integrate to zero") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
      const Disc d{Point(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0.1, 2)};
      const Point w = rng.in_disc(d.center, 0.99 * d.radius);
      CHECK(disc_integral(d, w).value == Complex(0.0, 0.0));
      CHECK(std::abs(adaptive_quadrature(d, w, 1e-10).value) <= 1e-8);
    }
  }

  TEST_CASE("polygon integral") {
    const Square centered{Point(0.4, -0.2), 0.8};
    CHECK(std::abs(square_integral(centered, centered.center).value) < 1e-14);
    CHECK(std::abs(adaptive_quadrature(centered, centered.center, 1e-10).value) < 1e-10);

    const Square unit{Point(0.5, 0.5), 1.0};
    const auto cf = square_integral(unit, 5.0);
    CHECK(cf.method == Method::boundary_reduction);
    CHECK(std::abs(cf.value - adaptive_quadrature(unit, 5.0, 1e-13).value) < 1e-10);

    std::vector<Point> gon;
    for (int k = 0; k < 512; ++k) gon.push_back(std::polar(1.0, 2 * pi * k / 512));
    const double defect = 1.0 - 512 * std::sin(2 * pi / 512) / 2 / pi;
    CHECK(std::abs(polygon_integral(gon, 2.0).value - 0.375) <= 2.0 * std::sqrt(defect));
    CHECK(std::abs(polygon_integral(gon, 2.0).value - 0.375) < 1e-4);
  }

  TEST_CASE("polygon errors") {
    const std::vector<Point> cw = {0.0, Point(0, 1), Point(1, 1), Point(1, 0)};
    CHECK_THROWS_AS(polygon_integral(cw, 5.0), std::invalid_argument);
    const std::vector<Point> flat = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(polygon_integral(flat, 5.0), std::invalid_argument);
    const std::vector<Point> two = {0.0, 1.0};
    CHECK_THROWS_AS(polygon_integral(two, 5.0), std::invalid_argument);
  }

  TEST_CASE("polygon on an edge falls back to the oracle") {
    const Square unit{Point(0.5, 0.5), 1.0};
    const auto r = square_integral(unit, Point(1.0, 0.3));
    CHECK(r.method == Method::adaptive_quadrature);
    const auto left = square_integral(unit, Point(1.0 + 1e-7, 0.3));
    const auto right = square_integral(unit, Point(1.0 - 1e-7, 0.3));
    CHECK(std::abs(r.value - 0.5 * (left.value + right.value)) < 1e-5);
  }

  TEST_CASE("additivity over a shared edge") {
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
      const Point w(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const Square a{Point(0.5, 0.5), 1.0}, b{Point(1.5, 0.5), 1.0};
      const std::vector<Point> rect = {0.0, 2.0, Point(2, 1), Point(0, 1)};
      bool near_edge = false;
      for (double x : {0.0, 1.0, 2.0}) near_edge |= std::abs(w.real() - x) < 1e-3 && w.imag() > -1e-3 && w.imag() < 1.001;
      for (double y : {0.0, 1.0}) near_edge |= std::abs(w.imag() - y) < 1e-3 && w.real() > -1e-3 && w.real() < 2.001;
      if (near_edge) continue;
      CHECK(std::abs(square_integral(a, w).value + square_integral(b, w).value - polygon_integral(rect, w).value) < 1e-10);
    }
  }

  TEST_CASE("translation covariance") {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
      const Point w(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const Point s(rng.uniform(-10, 10), rng.uniform(-10, 10));
      const Square q{Point(0.2, 0.1), 0.7};
      const Disc d{Point(-0.3, 0.4), 0.5};
      CHECK(std::abs(square_integral(q, w).value - square_integral(Square{q.center + s, q.side}, w + s).value) < 1e-10);
      CHECK(std::abs(disc_integral(d, w).value - disc_integral(Disc{d.center + s, d.radius}, w + s).value) < 1e-12);
    }
  }

  TEST_CASE("annulus caps") {
    CHECK(annulus_cap_integral(AnnulusCap{Point(1, 2), 0.7, std::nullopt}).value == Complex(0.0, 0.0));
    const AnnulusCap cap{0.0, 1.0, Disc{Point(0, 1), 1.0}};
    const auto r = annulus_cap_integral(cap);
    CHECK(std::abs(r.value) >= 0.0415);
    CHECK(std::abs(r.value - Complex(0.0, kCtilde)) < 1e-12);
    CHECK(std::abs(adaptive_quadrature(cap, 0.0, 1e-11).value - r.value) < 1e-10);

    RadialOptions o;
    o.window = SectorWindow{pi / 6, 5 * pi / 6};
    CHECK(std::abs(radial_clip_integral(0.0, 0.5, 1.0, cap.clip.value(), o).value.imag()) < 1e-14);
  }

  TEST_CASE("radial reduction of tiny discs far from the center") {
    const Point z(0.31, -0.72);
    const double rho = 4.7e-7;
    RadialOptions o;
    o.abs_tol = 1e-16 * rho * rho;
    o.rel_tol = 1e-13;
    for (double D : {0.0048, 0.0096}) {
      const Disc d{z + std::polar(D, 0.7), rho};
      const auto whole = radial_clip_integral(z, D - 2 * rho, D + 2 * rho, d, o);
      const auto closed = disc_integral(d, z);
      CHECK(whole.converged);
      CHECK(std::abs(whole.value - closed.value) <= 1e-12 * std::abs(closed.value));
      // Split at a radius that leaves a sliver of depth 3e-8 on one side.
      const double cut = D + rho - 3e-8;
      const auto left = radial_clip_integral(z, D - 2 * rho, cut, d, o);
      const auto right = radial_clip_integral(z, cut, D + 2 * rho, d, o);
      CHECK(left.converged);
      CHECK(right.converged);
      CHECK(std::abs(left.value + right.value - closed.value) <= 1e-12 * std::abs(closed.value));
    }
  }

  TEST_CASE("oracle: square centered at the singularity") {
    const Square q{Point(-1, 2), 0.3};
    const auto r = adaptive_quadrature(q, q.center, 1e-9);
    CHECK(r.converged);
    CHECK(std::abs(r.value) <= 1e-9);
  }

  TEST_CASE("oracle with the Cauchy kernel sees interior points") {
    OracleOptions o;
    o.kernel = KernelKind::cauchy;
    // ∫_{B(0,1)} dm2(xi) / (w - xi) = conj(w) for |w| < 1.
    const Point w(0.3, 0.2);
    CHECK(std::abs(adaptive_quadrature(Disc{0.0, 1.0}, w, 1e-10, o).value - std::conj(w)) < 1e-8);
  }

  TEST_CASE("absolute kernel mass bound") {
    const Disc d{Point(0.3, 0.1), 0.7};
    OracleOptions o;
    o.absolute = true;
    CHECK(adaptive_quadrature(d, d.center, 1e-10, o).value.real() == doctest::Approx(2 * 0.7).epsilon(1e-9));
    CHECK(abs_kernel_mass_bound(d) == doctest::Approx(1.4));

    const Square q{Point(0.2, -0.1), 0.9};
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
      const Point w(rng.uniform(-1, 1.4), rng.uniform(-1.2, 1));
      CHECK(adaptive_quadrature(q, w, 1e-9, o).value.real() <= abs_kernel_mass_bound(q) + 1e-8);
    }
    CHECK(abs_kernel_mass_bound(Square{0.0, 2.7}) == doctest::Approx(3 * abs_kernel_mass_bound(Square{0.0, 0.9})));
  }
}
