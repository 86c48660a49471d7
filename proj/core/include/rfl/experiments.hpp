#pragma once

// Runnable checks with explicit pass criteria. Every report is a function of
// its arguments only; thread count never changes a byte of output.

#include <cstdint>
#include <optional>
#include <vector>

#include "rfl/kernel.hpp"
#include "rfl/measure.hpp"
#include "rfl/report.hpp"
#include "rfl/tree.hpp"

namespace rfl {

// 2 ∫_II Im K(-xi) dm2(xi) for A(0, 1) ∩ B(i, 1), pinned after agreement of
// the radial reduction, the polar oracle, the grid oracle and a 30-digit
// evaluation of the one-dimensional integral.
inline constexpr double kCtilde = 0.04151902947083867;

struct CtildeResult {
  double value = 0.0;           // radial reduction, 2 Im(region II)
  double one_dimensional = 0.0; // (2/(3 pi)) ∫_{1/2}^{1} (1 - t^2) sqrt(1 - t^2/4) dt
  double grid_oracle = 0.0;     // midpoint grid over regions II and III
  double polar_oracle = 0.0;    // Im of the cap integral by adaptive_quadrature
  Complex region_I;
  Complex region_II;
  Complex region_III;
  double error_bound = 0.0;
};

CtildeResult compute_ctilde(double tol, std::size_t grid_cells = 1200);
ExperimentReport ctilde_report(double tol);

// Random discs and interior points: closed form exactly 0, oracle <= 1e-8.
// With KernelKind::cauchy the oracle check is expected to fail.
ExperimentReport check_reflectionless(std::size_t trials, std::uint64_t seed,
                                      KernelKind kernel = KernelKind::conj_over_square,
                                      std::size_t threads = 0);

// Closed forms against the oracle on random exterior discs, polygons and caps.
ExperimentReport check_oracle_equivalence(std::size_t trials, std::uint64_t seed, std::size_t threads = 0);

struct MeasureCheckOptions {
  std::size_t growth_samples = 10000;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

// Total mass, masses of all enlarged discs, and the growth constant at the
// two deepest levels of the tree.
ExperimentReport check_measure(const ConstructionTree& tree, const MeasureCheckOptions& opts = {});

struct BoundednessOptions {
  std::vector<int> levels;      // defaults to {depth - 1, depth}
  std::size_t points = 1050;    // per level, split over the strata
  std::uint64_t seed = 1;
  double fast_tol = 1e-6;
  std::size_t threads = 0;
};

ExperimentReport boundedness_sweep(const ConstructionTree& tree, const BoundednessOptions& opts = {});

enum class BoundaryPlacement { boundary, interior };

struct PvOptions {
  std::size_t trials = 100;  // per level
  std::uint64_t seed = 1;
  double c0 = 0.01;
  BoundaryPlacement placement = BoundaryPlacement::boundary;
  std::size_t threads = 0;
};

ExperimentReport pv_failure(const ConstructionTree& tree, int m, const PvOptions& opts = {});

struct DensityOptions {
  std::size_t samples = 2000;  // per level
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

ExperimentReport density_decay(const ConstructionTree& tree, int m, const DensityOptions& opts = {});

// Truncated T1 at z for rho on a log grid in [rho_min, rho_max].
std::vector<std::pair<double, Complex>> truncation_profile(const LevelMeasure& m, Point z, double rho_min,
                                                           double rho_max, std::size_t steps);

}  // namespace rfl
