#pragma once

// The kernel K(z) = conj(z) / z^2 and its integrals against normalized area
// measure over discs, polygons and annulus caps.
//
// In polar form K(t e^{i theta}) = e^{-3 i theta} / t: the phase winds three
// times per turn. All integral routines apply the area normalization
// m2(B(0,1)) = 1 themselves; callers never divide by pi.

#include <complex>
#include <optional>
#include <span>
#include <string_view>

#include "rfl/geometry.hpp"
#include "rfl/quadrature.hpp"

namespace rfl {

// The kernel under study, and the Cauchy kernel 1/z used as a negative
// control. Both have the form e^{-i k theta}/t with winding k = 3 resp. 1.
enum class KernelKind { conj_over_square, cauchy };

int winding(KernelKind kind);
std::string_view to_string(KernelKind kind);

enum class Method { closed_form, boundary_reduction, radial_reduction, adaptive_quadrature };

std::string_view to_string(Method m);

struct IntegralResult {
  Complex value;
  double error_bound = 0.0;
  Method method = Method::closed_form;
  bool converged = true;
};

// K(z) = conj(z) / z^2. Throws std::domain_error at z = 0.
Complex eval_kernel(Point z);
Complex eval_kernel(Point z, KernelKind kind);

// ∫_d K(omega - xi) dm2(xi). Zero for omega in the closed disc; otherwise
// r^2 conj(w)/w^2 - r^4/w^3 with w = omega - center.
IntegralResult disc_integral(const Disc& d, Point omega);

// ∫_Omega K(omega - xi) dm2(xi) for a simple counterclockwise polygon,
// reduced to a contour integral of F(xi) = -(conj(omega - xi))^2 / (2 (omega - xi)^2)
// along the edges. Falls back to adaptive quadrature when omega lies within
// tolerance of an edge. Throws std::invalid_argument for degenerate or
// clockwise input.
IntegralResult polygon_integral(std::span<const Point> vertices, Point omega);
IntegralResult square_integral(const Square& q, Point omega);

// Angular window [lo, hi] (lo < hi, inside [-pi, pi]) restricting a radial
// reduction to a sector about its center.
struct SectorWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct RadialOptions {
  KernelKind kernel = KernelKind::conj_over_square;
  std::optional<SectorWindow> window;
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  std::size_t max_panels = 2000;
};

// ∫ K(center - xi) dm2(xi) over {t_lo <= |xi - center| <= t_hi} ∩ clip (∩ sector),
// computed as -(1/pi) ∫ dt ∫_{Theta(t)} e^{-i k theta} dtheta with the angular
// integral in closed form and the radial one by adaptive Gauss-Kronrod,
// split where the circle/clip topology changes.
IntegralResult radial_clip_integral(Point center, double t_lo, double t_hi, const Disc& clip,
                                    const RadialOptions& opts = {});

// ∫_cap K(cap.center - xi) dm2(xi). Zero for an unclipped annulus.
IntegralResult annulus_cap_integral(const AnnulusCap& cap, const RadialOptions& opts = {});

// 2 sqrt(m2(region)): an upper bound of ∫_region |K(omega - xi)| dm2(xi) over all
// omega, attained by a disc centered at the singularity.
double abs_kernel_mass_bound(const Disc& d);
double abs_kernel_mass_bound(const Square& q);

}  // namespace rfl
