#include "rfl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "rfl/parallel.hpp"
#include "rfl/random.hpp"

namespace rfl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSupportTol = 1e-9;

// ∫_{B(c, r)} K(z - xi) dm2(xi) / r for z outside the disc.
inline Complex scaled_disc_term(Point z, Point c, double r) {
  const Complex inv = 1.0 / (z - c);
  const Complex inv2 = inv * inv;
  return r * std::conj(z - c) * inv2 - r * r * r * inv2 * inv;
}

RadialOptions clip_options(double r) {
  RadialOptions o;
  o.abs_tol = 1e-16 * r * r;
  o.rel_tol = 1e-13;
  return o;
}

}  // namespace

LevelMeasure::LevelMeasure(const ConstructionTree& tree, int level) : tree_(&tree), level_(level) {
  if (level < 0 || level > tree.depth()) throw std::out_of_range("measure level outside the tree");
  hull_.resize(level);
  for (int k = level - 1; k >= 0; --k) {
    hull_[k].assign(tree.count(k), 0.0);
    const std::uint64_t q = tree.children_per_node(k);
    const auto& pc = tree.centers(k);
    const auto& cc = tree.centers(k + 1);
    for (std::size_t j = 0; j < tree.count(k); ++j) {
      double h = 0.0;
      for (std::size_t c = j * q; c < (j + 1) * q; ++c) {
        const double hc = k + 1 == level ? tree.radius(level) : hull_[k + 1][c];
        h = std::max(h, std::abs(cc[c] - pc[j]) + hc);
      }
      hull_[k][j] = h;
    }
  }
}

double LevelMeasure::hull_radius(int k, std::size_t j) const {
  return k == level_ ? disc_radius() : hull_.at(k).at(j);
}

double LevelMeasure::distance_to_support(Point z) const {
  const double r = disc_radius();
  double best = std::numeric_limits<double>::infinity();
  double reach = tree_->enlarged_radius(level_);
  // Widen the search until something is found; far points fall back to the hull.
  for (int attempt = 0; attempt < 6 && !std::isfinite(best); ++attempt, reach *= 8.0)
    tree_->for_each_near(level_, z, reach, [&](std::size_t j) {
      best = std::min(best, std::max(0.0, std::abs(z - tree_->centers(level_)[j]) - r));
    });
  if (!std::isfinite(best))
    for (std::size_t j = 0; j < disc_count(); ++j)
      best = std::min(best, std::max(0.0, std::abs(z - tree_->centers(level_)[j]) - r));
  return best;
}

void LevelMeasure::require_off_support(Point z) const {
  if (!is_finite(z)) throw std::invalid_argument("evaluation point is not finite");
  const double r = disc_radius();
  const double limit = r * (1.0 + kSupportTol);
  tree_->for_each_near(level_, z, limit, [&](std::size_t j) {
    if (std::abs(z - tree_->centers(level_)[j]) <= limit)
      throw OnSupportError(fmt::format("z = ({}, {}) lies on the support (level-{} disc {})", z.real(),
                                       z.imag(), level_, j));
  });
}

namespace {

void mass_rec(const LevelMeasure& m, const Disc& q, int k, std::size_t j, CompensatedSum& acc) {
  const auto& t = m.tree();
  const int n = m.level();
  const Point c = t.centers(k)[j];
  const double d = std::abs(q.center - c);
  if (k == n) {
    acc.add(lens_area(q, t.core_disc(n, j)) / m.disc_radius());
    return;
  }
  const double h = m.hull_radius(k, j);
  if (d >= q.radius + h) return;
  if (d + h <= q.radius) {
    const auto [first, last] = t.descendants(k, j, n);
    acc.add(static_cast<double>(last - first) * m.disc_radius());
    return;
  }
  const std::uint64_t ch = t.children_per_node(k);
  for (std::size_t c2 = j * ch; c2 < (j + 1) * ch; ++c2) mass_rec(m, q, k + 1, c2, acc);
}

}  // namespace

double mass_on_disc(const LevelMeasure& m, const Disc& q) {
  CompensatedSum acc;
  mass_rec(m, q, 0, 0, acc);
  return acc.value();
}

GrowthReport growth_scan(const LevelMeasure& m, std::size_t num_samples, std::uint64_t seed, std::size_t threads) {
  if (num_samples == 0) throw std::invalid_argument("growth_scan: num_samples must be positive");
  const auto& t = m.tree();
  const int n = m.level();
  Rng rng(seed);
  std::vector<GrowthSample> samples(num_samples);
  for (auto& s : samples) {
    const int k = static_cast<int>(rng.index(static_cast<std::size_t>(n) + 1));
    const std::size_t j = rng.index(t.count(k));
    s.z = rng.in_disc(t.centers(k)[j], 2.0 * t.enlarged_radius(k));
    s.r = rng.log_uniform(m.disc_radius(), 2.0);
  }
  const auto masses = parallel_map(num_samples, threads, [&](std::size_t i) {
    return mass_on_disc(m, Disc{samples[i].z, samples[i].r});
  });
  GrowthReport out;
  for (std::size_t i = 0; i < num_samples; ++i) {
    samples[i].mass = masses[i];
    samples[i].ratio = masses[i] / samples[i].r;
    out.max_ratio = std::max(out.max_ratio, samples[i].ratio);
  }
  out.samples = std::move(samples);
  return out;
}

Complex t1_range(const LevelMeasure& m, Point z, std::size_t first, std::size_t last) {
  const auto& c = m.tree().centers(m.level());
  const double r = m.disc_radius();
  CompensatedComplexSum acc;
  for (std::size_t j = first; j < last; ++j) acc.add(scaled_disc_term(z, c[j], r));
  return acc.value();
}

IntegralResult t1_exact(const LevelMeasure& m, Point z) {
  m.require_off_support(z);
  const auto& c = m.tree().centers(m.level());
  const double r = m.disc_radius();
  CompensatedComplexSum acc;
  for (std::size_t j = 0; j < c.size(); ++j) acc.add(scaled_disc_term(z, c[j], r));
  IntegralResult out;
  out.method = Method::closed_form;
  out.value = acc.value();
  out.error_bound = 16.0 * kEps * acc.abs_total();
  return out;
}

namespace {

struct ClipSum {
  CompensatedComplexSum value;
  double error = 0.0;
  bool converged = true;

  void add_clip(const IntegralResult& r, double scale) {
    value.add(r.value / scale);
    error += r.error_bound / scale;
    converged = converged && r.converged;
  }
};

// Leaves of (k, j) whose discs meet {lo < |xi - z| < hi}; hi = inf allowed.
template <class LeafFn>
void shell_rec(const LevelMeasure& m, Point z, double lo, double hi, int k, std::size_t j, LeafFn& leaf) {
  const auto& t = m.tree();
  const double d = std::abs(z - t.centers(k)[j]);
  const double h = m.hull_radius(k, j);
  if (d + h <= lo || d - h >= hi) return;
  if (k == m.level()) {
    leaf(j, d);
    return;
  }
  const std::uint64_t ch = t.children_per_node(k);
  for (std::size_t c = j * ch; c < (j + 1) * ch; ++c) shell_rec(m, z, lo, hi, k + 1, c, leaf);
}

}  // namespace

IntegralResult annulus_t(const LevelMeasure& m, Point z, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("annulus_t: r must be positive");
  const double rn = m.disc_radius();
  const auto& centers = m.tree().centers(m.level());
  const RadialOptions opts = clip_options(rn);
  ClipSum acc;
  auto leaf = [&](std::size_t j, double d) {
    if (d - rn >= 0.5 * r && d + rn <= r) {
      acc.value.add(scaled_disc_term(z, centers[j], rn));
      return;
    }
    acc.add_clip(radial_clip_integral(z, 0.5 * r, r, Disc{centers[j], rn}, opts), rn);
  };
  shell_rec(m, z, 0.5 * r, r, 0, 0, leaf);
  IntegralResult out;
  out.method = Method::radial_reduction;
  out.value = acc.value.value();
  out.error_bound = acc.error + 16.0 * kEps * acc.value.abs_total();
  out.converged = acc.converged;
  return out;
}

IntegralResult truncated_t1(const LevelMeasure& m, Point z, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("truncated_t1: rho must be positive");
  const double rn = m.disc_radius();
  const auto& centers = m.tree().centers(m.level());
  const RadialOptions opts = clip_options(rn);
  ClipSum acc;
  auto leaf = [&](std::size_t j, double d) {
    if (d - rn >= rho) {
      acc.value.add(scaled_disc_term(z, centers[j], rn));
      return;
    }
    acc.add_clip(radial_clip_integral(z, rho, d + rn, Disc{centers[j], rn}, opts), rn);
  };
  shell_rec(m, z, rho, std::numeric_limits<double>::infinity(), 0, 0, leaf);
  IntegralResult out;
  out.method = Method::radial_reduction;
  out.value = acc.value.value();
  out.error_bound = acc.error + 16.0 * kEps * acc.value.abs_total();
  out.converged = acc.converged;
  return out;
}

}  // namespace rfl
