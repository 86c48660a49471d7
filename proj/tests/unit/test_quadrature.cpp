#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfl/quadrature.hpp"

using namespace rfl;

TEST_SUITE("quadrature") {
  TEST_CASE("polynomials are exact") {
    const auto r = integrate_gk15([](double x) { return Complex(x * x * x * x, 2 * x); }, -1.0, 2.0);
    CHECK(r.value.real() == doctest::Approx(33.0 / 5).epsilon(1e-14));
    CHECK(r.value.imag() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.converged);
    CHECK(r.panels == 1);
  }

  TEST_CASE("zero integrals terminate") {
    const auto r = integrate_gk15([](double x) { return Complex(std::sin(3 * x), 0.0); }, -std::numbers::pi, std::numbers::pi);
    CHECK(std::abs(r.value) < 1e-14);
    CHECK(r.converged);
  }

  TEST_CASE("cosine substitution handles endpoint square roots") {
    QuadratureOptions o;
    o.abs_tol = 1e-14;
    const auto r = integrate_gk15_cosine([](double x) { return Complex(std::sqrt(1 - x * x), 0.0); }, -1.0, 1.0, o);
    CHECK(r.value.real() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  }

  TEST_CASE("work budget is reported") {
    QuadratureOptions o;
    o.abs_tol = 1e-300;
    o.max_panels = 8;
    const auto r = integrate_gk15([](double x) { return Complex(1.0 / std::sqrt(x), 0.0); }, 0.0, 1.0, o);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 8);
  }

  TEST_CASE("compensated sums") {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
  }
}
