#include "rfl/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace rfl {

SpatialGrid::SpatialGrid(std::span<const Point> points, double cell) : cell_(cell) {
  if (points.size() > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("spatial grid: too many points");
  entries_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    entries_.push_back({key(points[i].real()), key(points[i].imag()), static_cast<std::uint32_t>(i)});
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.cx, a.cy, a.index) < std::tie(b.cx, b.cy, b.index);
  });
}

std::vector<SpatialGrid::Entry>::const_iterator SpatialGrid::lower_bound(std::int64_t cx,
                                                                         std::int64_t cy) const {
  return std::lower_bound(entries_.begin(), entries_.end(), std::pair{cx, cy},
                          [](const Entry& e, const std::pair<std::int64_t, std::int64_t>& k) {
                            return std::tie(e.cx, e.cy) < std::tie(k.first, k.second);
                          });
}

ConstructionTree ConstructionTree::build(const RadiiSchedule& schedule, int depth) {
  if (depth < 0) throw ScheduleError("depth must be nonnegative");
  if (depth > schedule.depth())
    throw ScheduleError(fmt::format("depth {} exceeds the schedule length {}", depth, schedule.depth()));

  ConstructionTree t;
  t.schedule_ = schedule;
  t.levels_.resize(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    Level& L = t.levels_[n];
    L.radius = schedule.radius(n);
    L.enlarged_radius = schedule.enlarged_radius(n);
    if (n == 0) {
      L.centers = {Point(0.0, 0.0)};
    } else {
      const Level& P = t.levels_[n - 1];
      L.pattern = pack_squares(P.radius, schedule.ratio(n - 1));
      L.square_side = L.pattern.mesh;
      L.square_centers.reserve(P.centers.size() * L.pattern.squares.size());
      for (const Point& c : P.centers)
        for (const Square& q : L.pattern.squares) L.square_centers.push_back(c + q.center);
      L.centers = L.square_centers;
    }
    if (L.centers.size() != schedule.reciprocal(n))
      throw std::logic_error(fmt::format("level {} has {} nodes, expected {}", n, L.centers.size(),
                                         schedule.reciprocal(n)));
    L.grid = SpatialGrid(L.centers, t.grid_cell(n));
  }
  return t;
}

double ConstructionTree::grid_cell(int n) const {
  return n == 0 ? 4.0 : 0.25 * schedule_.gap_scale(n);
}

TreeNode ConstructionTree::node(int n, std::size_t j) const {
  TreeNode out;
  out.level = n;
  out.index = j;
  out.core = core_disc(n, j);
  out.enlarged = enlarged_disc(n, j);
  if (n >= 1) out.square = square(n, j);
  if (n < depth()) {
    out.child_count = children_per_node(n);
    out.first_child = j * out.child_count;
  }
  return out;
}

std::uint64_t ConstructionTree::children_per_node(int n) const {
  if (n < 0 || n >= depth()) return 0;
  return schedule_.ratio(n);
}

std::size_t ConstructionTree::parent(int n, std::size_t j) const {
  if (n < 1) throw std::out_of_range("the root has no parent");
  return j / schedule_.ratio(n - 1);
}

std::pair<std::size_t, std::size_t> ConstructionTree::descendants(int n, std::size_t j, int m) const {
  if (m < n || m > depth()) throw std::out_of_range("descendant level out of range");
  const std::uint64_t span = schedule_.reciprocal(m) / schedule_.reciprocal(n);
  return {j * span, (j + 1) * span};
}

std::size_t ConstructionTree::ancestor(int m, std::size_t i, int n) const {
  if (n > m || n < 0) throw std::out_of_range("ancestor level out of range");
  return i / (schedule_.reciprocal(m) / schedule_.reciprocal(n));
}

namespace {

bool square_contains(const Square& q, Point z) {
  return std::abs(z.real() - q.center.real()) <= q.half() && std::abs(z.imag() - q.center.imag()) <= q.half();
}

}  // namespace

std::optional<std::size_t> ConstructionTree::locate(Point z, int n, LocateMode mode) const {
  if (n < 0 || n > depth()) throw std::out_of_range("locate: level out of range");
  if (mode == LocateMode::square && n == 0) return std::nullopt;
  std::optional<std::size_t> found;
  if (mode == LocateMode::enlarged) {
    const double R = enlarged_radius(n);
    grid(n).visit(z, R, [&](std::size_t j) {
      if (!found && std::abs(z - centers(n)[j]) <= R) found = j;
    });
  } else {
    // Squares are located through their disc: each square holds its disc.
    const double reach = square_side(n) * std::numbers::sqrt2;
    grid(n).visit(z, reach, [&](std::size_t j) {
      if (!found && square_contains(square(n, j), z)) found = j;
    });
  }
  return found;
}

std::optional<std::size_t> ConstructionTree::locate_brute_force(Point z, int n, LocateMode mode) const {
  if (mode == LocateMode::square && n == 0) return std::nullopt;
  for (std::size_t j = 0; j < count(n); ++j) {
    const bool in = mode == LocateMode::enlarged ? std::abs(z - centers(n)[j]) <= enlarged_radius(n)
                                                 : square_contains(square(n, j), z);
    if (in) return j;
  }
  return std::nullopt;
}

void ConstructionTree::set_disc_centers(int n, std::vector<Point> centers) {
  Level& L = levels_.at(n);
  if (centers.size() != L.centers.size()) throw std::invalid_argument("set_disc_centers: count mismatch");
  L.centers = std::move(centers);
  L.grid = SpatialGrid(L.centers, grid_cell(n));
}

ConstructionTree ConstructionTree::with_displaced_node(int n, std::size_t j, Point offset) const {
  ConstructionTree t = *this;
  auto c = t.centers(n);
  c.at(j) += offset;
  t.set_disc_centers(n, std::move(c));
  return t;
}

}  // namespace rfl
