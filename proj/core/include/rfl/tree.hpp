#pragma once

// The disc/square hierarchy. Level n holds 1/r_n core discs of radius r_n,
// their enlarged discs of radius (1 + s_{n+1}) r_n and, for n >= 1, the
// lattice squares they were placed in. Children of node j at level n are the
// contiguous indices [j q, (j+1) q) at level n+1, q = r_n / r_{n+1}, so index
// order at any level is tree preorder.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rfl/geometry.hpp"
#include "rfl/packing.hpp"
#include "rfl/schedule.hpp"

namespace rfl {

// Uniform grid over a point set, stored as occupied cells sorted by key.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(std::span<const Point> points, double cell);

  double cell() const { return cell_; }

  // Calls f(index) for every point in a cell meeting the square of half
  // width `reach` around z. Candidates only; callers filter by distance.
  template <class F>
  void visit(Point z, double reach, F&& f) const {
    if (entries_.empty()) return;
    const std::int64_t x0 = key(z.real() - reach), x1 = key(z.real() + reach);
    const std::int64_t y0 = key(z.imag() - reach), y1 = key(z.imag() + reach);
    for (std::int64_t x = x0; x <= x1; ++x) {
      auto it = lower_bound(x, y0);
      for (; it != entries_.end() && it->cx == x && it->cy <= y1; ++it) f(static_cast<std::size_t>(it->index));
    }
  }

 private:
  struct Entry {
    std::int64_t cx;
    std::int64_t cy;
    std::uint32_t index;
  };
  std::int64_t key(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
  std::vector<Entry>::const_iterator lower_bound(std::int64_t cx, std::int64_t cy) const;

  double cell_ = 1.0;
  std::vector<Entry> entries_;
};

struct TreeNode {
  int level = 0;
  std::size_t index = 0;
  Disc core;
  Disc enlarged;
  std::optional<Square> square;
  std::size_t first_child = 0;
  std::size_t child_count = 0;
};

enum class LocateMode { enlarged, square };

class ConstructionTree {
 public:
  // Throws ScheduleError if depth exceeds the schedule.
  static ConstructionTree build(const RadiiSchedule& schedule, int depth);

  const RadiiSchedule& schedule() const { return schedule_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t count(int n) const { return levels_.at(n).centers.size(); }

  double radius(int n) const { return levels_.at(n).radius; }
  double enlarged_radius(int n) const { return levels_.at(n).enlarged_radius; }
  // Side of the level-n squares (n >= 1).
  double square_side(int n) const { return levels_.at(n).square_side; }
  // Placement of the level-n squares around their parent's center (n >= 1).
  const Packing& pattern(int n) const { return levels_.at(n).pattern; }

  const std::vector<Point>& centers(int n) const { return levels_.at(n).centers; }
  const std::vector<Point>& square_centers(int n) const { return levels_.at(n).square_centers; }
  const SpatialGrid& grid(int n) const { return levels_.at(n).grid; }

  Disc core_disc(int n, std::size_t j) const { return {centers(n)[j], radius(n)}; }
  Disc enlarged_disc(int n, std::size_t j) const { return {centers(n)[j], enlarged_radius(n)}; }
  Square square(int n, std::size_t j) const { return {square_centers(n)[j], square_side(n)}; }
  TreeNode node(int n, std::size_t j) const;

  std::uint64_t children_per_node(int n) const;
  std::size_t parent(int n, std::size_t j) const;
  // Level-m descendants of (n, j) as the index range [first, last).
  std::pair<std::size_t, std::size_t> descendants(int n, std::size_t j, int m) const;
  std::size_t ancestor(int m, std::size_t i, int n) const;

  // The level-n node whose enlarged disc (or square) contains z.
  std::optional<std::size_t> locate(Point z, int n, LocateMode mode = LocateMode::enlarged) const;
  std::optional<std::size_t> locate_brute_force(Point z, int n, LocateMode mode = LocateMode::enlarged) const;

  // Calls f(j) for level-n nodes whose core disc may lie within `reach` of z.
  template <class F>
  void for_each_near(int n, Point z, double reach, F&& f) const {
    grid(n).visit(z, reach + enlarged_radius(n), std::forward<F>(f));
  }

  // Replaces the level-n disc centers (squares are untouched).
  void set_disc_centers(int n, std::vector<Point> centers);
  // Copy with one disc center moved; for negative controls.
  ConstructionTree with_displaced_node(int n, std::size_t j, Point offset) const;

 private:
  struct Level {
    double radius = 1.0;
    double enlarged_radius = 1.0;
    double square_side = 0.0;
    Packing pattern;
    std::vector<Point> centers;
    std::vector<Point> square_centers;
    SpatialGrid grid;
  };

  double grid_cell(int n) const;

  RadiiSchedule schedule_;
  std::vector<Level> levels_;
};

}  // namespace rfl
