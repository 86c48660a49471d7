#pragma once

// mu^(n): each level-n core disc carries (1/r_n) times normalized area, so
// every disc has mass r_n and the total mass is 1. All sums run over leaves
// in index (= tree preorder) order with compensated accumulation.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rfl/kernel.hpp"
#include "rfl/tree.hpp"

namespace rfl {

class OnSupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class LevelMeasure {
 public:
  LevelMeasure(const ConstructionTree& tree, int level);

  const ConstructionTree& tree() const { return *tree_; }
  int level() const { return level_; }
  double disc_radius() const { return tree_->radius(level_); }
  std::size_t disc_count() const { return tree_->count(level_); }

  // Radius about the center of node (k, j), k <= level, of a disc containing
  // all of its level-n core discs, measured from the actual centers.
  double hull_radius(int k, std::size_t j) const;

  // Throws OnSupportError if z is within 1e-9 r_n of a core disc.
  void require_off_support(Point z) const;
  // Distance from z to the nearest core disc (0 inside one).
  double distance_to_support(Point z) const;

 private:
  const ConstructionTree* tree_;
  int level_;
  std::vector<std::vector<double>> hull_;  // levels 0 .. level-1
};

double mass_on_disc(const LevelMeasure& m, const Disc& q);

struct GrowthSample {
  Point z;
  double r = 0.0;
  double mass = 0.0;
  double ratio = 0.0;
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  double max_ratio = 0.0;
};

// z uniform in the disc of twice the enlarged radius around a random node of a
// random level k <= n; r log-uniform in [r_n, 2].
GrowthReport growth_scan(const LevelMeasure& m, std::size_t num_samples, std::uint64_t seed,
                         std::size_t threads = 0);

// ∫ K(z - xi) dmu^(n)(xi) by summing the disc closed forms.
IntegralResult t1_exact(const LevelMeasure& m, Point z);
// The same sum restricted to level-n discs [first, last); no support check.
Complex t1_range(const LevelMeasure& m, Point z, std::size_t first, std::size_t last);

struct FastStats {
  std::size_t terms = 0;        // closed forms evaluated
  std::size_t expansions = 0;   // clusters split
};

// Far clusters are replaced by one disc of the cluster's mass centered at
// its centroid; the error of each swap is bounded by 5 (S2 + S2') / d^3 with
// S2, S2' the second moments of the two distributions about the centroid and
// d the distance from z to a disc containing both.
class FastEvaluator {
 public:
  explicit FastEvaluator(const LevelMeasure& m);

  IntegralResult evaluate(Point z, double tol, FastStats* stats = nullptr) const;

 private:
  const LevelMeasure* m_;
  std::vector<std::vector<Point>> centroid_;
  std::vector<std::vector<double>> second_moment_;
  std::vector<std::vector<double>> proxy_hull_;
};

IntegralResult t1_fast(const LevelMeasure& m, Point z, double tol);

// ∫_{A(z, r)} K(z - xi) dmu^(n)(xi). z may lie on the support.
IntegralResult annulus_t(const LevelMeasure& m, Point z, double r);

// ∫_{|z - xi| > rho} K(z - xi) dmu^(n)(xi).
IntegralResult truncated_t1(const LevelMeasure& m, Point z, double rho);

}  // namespace rfl
