#pragma once

// Independent reference integrator: two-dimensional adaptive quadrature of
// the kernel over a region in polar coordinates about the singularity. The
// inner radial integral is evaluated numerically along each ray; the outer
// angular integral is split at every angle where the ray/region topology
// changes. Shares no formulas with the closed forms it checks.

#include <variant>
#include <vector>

#include "rfl/geometry.hpp"
#include "rfl/kernel.hpp"

namespace rfl {

// Simple polygon, counterclockwise.
struct Polygon {
  std::vector<Point> vertices;
};

using Region = std::variant<Disc, Square, AnnulusCap, Polygon>;

struct OracleOptions {
  KernelKind kernel = KernelKind::conj_over_square;
  // Integrate |K| instead of K (the value is then real and nonnegative).
  bool absolute = false;
  std::size_t max_panels_per_arc = 400;
};

// ∫_region K(omega - xi) dm2(xi) with error_bound <= tol on success. On
// non-convergence within the work budget the result has converged = false.
IntegralResult adaptive_quadrature(const Region& region, Point omega, double tol,
                                   const OracleOptions& opts = {});

// Ray from omega in direction e^{i theta}: parameter intervals inside region.
std::vector<std::pair<double, double>> ray_intervals(const Region& region, Point omega,
                                                     double theta);

// Angles (in (-pi, pi)) where the ray/region intersection changes topology.
std::vector<double> topology_angles(const Region& region, Point omega);

}  // namespace rfl
