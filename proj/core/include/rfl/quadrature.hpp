#pragma once

// One-dimensional adaptive Gauss-Kronrod integration with an absolute error
// target and a hard work budget, plus compensated summation helpers.

#include <complex>
#include <cstddef>
#include <functional>

namespace rfl {

using Complex = std::complex<double>;

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;          // relative to the L1 norm of the integrand
  std::size_t max_panels = 4096; // work budget; exceeded -> converged = false
};

struct QuadratureResult {
  Complex value;
  double error = 0.0;  // estimated absolute error
  double l1 = 0.0;     // estimate of the integral of |f|
  std::size_t panels = 0;
  bool converged = true;
};

using ComplexIntegrand = std::function<Complex(double)>;

// Global adaptive GK15 on [a, b]: the panel with the largest error estimate is
// bisected until the summed error is below max(abs_tol, rel_tol * l1).
QuadratureResult integrate_gk15(const ComplexIntegrand& f, double a, double b,
                                const QuadratureOptions& opts = {});

// Same, after the substitution x = (a+b)/2 - (b-a)/2 cos(phi). Removes
// square-root behaviour at both endpoints.
QuadratureResult integrate_gk15_cosine(const ComplexIntegrand& f, double a, double b,
                                       const QuadratureOptions& opts = {});

// Neumaier (improved Kahan) accumulator for doubles.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::abs(x);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }
  // Sum of |re| + |im| of all terms; scales the rounding error of the total.
  double abs_total() const { return re_.abs_total() + im_.abs_total(); }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace rfl
