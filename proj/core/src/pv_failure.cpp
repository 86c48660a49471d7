#include <algorithm>
#include <cmath>
#include <limits>

#include "rfl/experiments.hpp"
#include "rfl/parallel.hpp"
#include "rfl/random.hpp"

namespace rfl {

namespace {

struct PvPoint {
  int level;
  std::size_t node;
  Point z;
};

struct PvResult {
  Complex annulus;
  Complex oscillation;  // truncated at r_n/2 minus truncated at r_n
  double additivity = 0.0;
  Complex lebesgue;
  double lipschitz = 0.0;  // |dL| / |dz| in units of 1/r_n
  bool converged = true;
};

Complex lebesgue_model(Point z, const Disc& core) {
  const double r = core.radius;
  RadialOptions o;
  o.abs_tol = 1e-16 * r * r;
  o.rel_tol = 1e-13;
  return radial_clip_integral(z, 0.5 * r, r, core, o).value / r;
}

// Largest number of level-(n+1) squares meeting (1 - c) B^(n)_j over all j.
std::size_t max_squares_meeting(const ConstructionTree& tree, int n, double c) {
  const double R = (1.0 - c) * tree.enlarged_radius(n);
  const std::uint64_t q = tree.children_per_node(n);
  std::size_t worst = 0;
  for (std::size_t j = 0; j < tree.count(n); ++j) {
    const Point center = tree.centers(n)[j];
    std::size_t hits = 0;
    for (std::size_t k = j * q; k < (j + 1) * q; ++k) hits += distance(center, tree.square(n + 1, k)) < R ? 1 : 0;
    worst = std::max(worst, hits);
  }
  return worst;
}

}  // namespace

ExperimentReport pv_failure(const ConstructionTree& tree, int m, const PvOptions& opts) {
  if (m < 2 || m > tree.depth()) throw std::invalid_argument("pv_failure: need 2 <= m <= depth");
  const LevelMeasure mu(tree, m);
  const double lower = kCtilde / 4.0;

  Rng rng(opts.seed);
  std::vector<PvPoint> pts;
  for (int n = 1; n < m; ++n)
    for (std::size_t i = 0; i < opts.trials; ++i) {
      const std::size_t j = rng.index(tree.count(n));
      const double rad = opts.placement == BoundaryPlacement::boundary ? 1.0 : 0.3;
      pts.push_back({n, j, rng.on_circle(tree.centers(n)[j], rad * tree.radius(n))});
    }
  std::vector<Point> directions(pts.size());
  for (auto& d : directions) d = std::polar(1.0, rng.angle());

  const auto results = parallel_map(pts.size(), opts.threads, [&](std::size_t i) {
    const PvPoint& p = pts[i];
    const double rn = tree.radius(p.level);
    PvResult r;
    const auto A = annulus_t(mu, p.z, rn);
    const auto T1 = truncated_t1(mu, p.z, rn);
    const auto T2 = truncated_t1(mu, p.z, 0.5 * rn);
    r.annulus = A.value;
    r.oscillation = T2.value - T1.value;
    r.additivity = std::abs(r.oscillation - r.annulus);
    r.converged = A.converged && T1.converged && T2.converged;
    const Disc core = tree.core_disc(p.level, p.node);
    r.lebesgue = lebesgue_model(p.z, core);
    const double h = 1e-3 * rn;
    r.lipschitz = std::abs(lebesgue_model(p.z + h * directions[i], core) - r.lebesgue) / h * rn;
    return r;
  });

  ExperimentReport rep;
  rep.name = "pv-failure";
  rep.parameters = {{"schedule", tree.schedule().ratios()},
                    {"depth", m},
                    {"trials_per_level", opts.trials},
                    {"seed", opts.seed},
                    {"c0", opts.c0},
                    {"placement", opts.placement == BoundaryPlacement::boundary ? "core_boundary" : "interior"}};

  bool annulus_ok = true, oscillation_ok = true, additivity_ok = true;
  double claim_c = 0.0, lipschitz_c = 0.0;
  std::vector<bool> level_ok(m, true);
  std::vector<double> level_min(m, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const PvPoint& p = pts[i];
    const PvResult& r = results[i];
    const double rn = tree.radius(p.level);
    const bool a_ok = std::abs(r.annulus) >= lower && r.converged;
    const bool o_ok = std::abs(r.oscillation) >= lower;
    const bool add_ok = r.additivity <= 1e-10;
    annulus_ok = annulus_ok && a_ok;
    oscillation_ok = oscillation_ok && o_ok;
    additivity_ok = additivity_ok && add_ok;
    level_ok[p.level] = level_ok[p.level] && a_ok;
    level_min[p.level] = std::min(level_min[p.level], std::abs(r.annulus));
    const double s = tree.schedule().s(p.level + 1);
    const Complex claim_diff = r.annulus - r.lebesgue;
    claim_c = std::max(claim_c, std::abs(claim_diff) / s);
    lipschitz_c = std::max(lipschitz_c, r.lipschitz);
    rep.records.push_back({"pv-failure.annulus_lower", p.level, p.z, rn, r.annulus, lower, a_ok});
    rep.records.push_back({"pv-failure.oscillation_lower", p.level, p.z, rn, r.oscillation, lower, o_ok});
    rep.records.push_back({"pv-failure.additivity", p.level, p.z, rn, r.oscillation - r.annulus, 1e-10, add_ok});
    rep.records.push_back({"pv-failure.lebesgue_comparison", p.level, p.z, rn, claim_diff, s, std::isfinite(std::abs(claim_diff))});
    rep.records.push_back({"pv-failure.lipschitz", p.level, p.z, rn, Complex(r.lipschitz, 0.0),
                           std::numeric_limits<double>::infinity(), std::isfinite(r.lipschitz)});
  }

  // Smallest level from which on every sampled point clears the bound.
  nlohmann::json first_good = nullptr;
  for (int n = m - 1; n >= 1 && level_ok[n]; --n) first_good = n;

  bool counting_ok = true;
  double counting_c = 0.0;
  nlohmann::json counting = nlohmann::json::array();
  for (int n = 1; n < m; ++n) {
    const auto q = static_cast<double>(tree.children_per_node(n));
    const std::size_t hits = max_squares_meeting(tree, n, opts.c0);
    const double factor = double(hits) / q;
    const bool ok = factor <= 1.0 - opts.c0 / 2.0;
    counting_ok = counting_ok && ok;
    counting_c = std::max(counting_c, (double(hits) - (1.0 - opts.c0) * q) / std::sqrt(q));
    nlohmann::json smallest = nullptr;
    for (int step = 1; step < 100; ++step) {
      const double c = 0.01 * step;
      if (double(max_squares_meeting(tree, n, c)) / q <= 1.0 - c / 2.0) {
        smallest = c;
        break;
      }
    }
    rep.records.push_back({"pv-failure.counting_decay", n, tree.centers(n)[0], (1.0 - opts.c0) * tree.enlarged_radius(n),
                           Complex(factor, 0.0), 1.0 - opts.c0 / 2.0, ok});
    counting.push_back({{"level", n},
                        {"max_squares_meeting", hits},
                        {"children", tree.children_per_node(n)},
                        {"decay_factor", factor},
                        {"required", 1.0 - opts.c0 / 2.0},
                        {"smallest_c0_passing_count", smallest}});
  }
  nlohmann::json mins = nlohmann::json::array();
  for (int n = 1; n < m; ++n) mins.push_back({{"level", n}, {"min_abs_annulus", level_min[n]}});

  const bool finite_constants = std::isfinite(claim_c) && std::isfinite(lipschitz_c);
  rep.pass = annulus_ok && oscillation_ok && additivity_ok && finite_constants && counting_ok;
  rep.summary = {{"ctilde_over_4", lower},
                 {"annulus_lower_ok", annulus_ok},
                 {"oscillation_ok", oscillation_ok},
                 {"additivity_ok", additivity_ok},
                 {"min_abs_annulus_by_level", mins},
                 {"smallest_level_bound_holds", first_good},
                 {"claim_measured_C", claim_c},
                 {"lipschitz_measured_C", lipschitz_c},
                 {"lipschitz_drift_below_half_ctilde", opts.c0 * lipschitz_c < kCtilde / 2.0},
                 {"counting", counting},
                 {"counting_measured_C", counting_c},
                 {"counting_ok", counting_ok},
                 {"pass", rep.pass}};
  return rep;
}

}  // namespace rfl
