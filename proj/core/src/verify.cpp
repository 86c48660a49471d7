#include "rfl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "rfl/random.hpp"

namespace rfl {

bool SeparationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass(); });
}

namespace {

std::vector<std::size_t> pick_nodes(std::size_t count, const VerifyOptions& opts, int level, bool& exhaustive) {
  std::vector<std::size_t> out;
  exhaustive = count <= opts.exhaustive_limit;
  if (exhaustive) {
    out.resize(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = j;
  } else {
    Rng rng(opts.seed + static_cast<std::uint64_t>(level));
    out.resize(opts.samples);
    for (auto& j : out) j = rng.index(count);
  }
  return out;
}

PropertyCheck check_a(const ConstructionTree& t, int n, const VerifyOptions& opts) {
  PropertyCheck c{'a', n};
  c.min_observed = std::numeric_limits<double>::infinity();
  const auto nodes = pick_nodes(t.count(n), opts, n, c.exhaustive);
  const double R = t.enlarged_radius(n - 1);
  const double reach = t.square_side(n) * std::numbers::sqrt2 / 2.0;
  for (std::size_t j : nodes) {
    const Point parent = t.centers(n - 1)[t.parent(n, j)];
    const double margin = R - (std::abs(t.square_centers(n)[j] - parent) + reach);
    c.min_observed = std::min(c.min_observed, margin);
    if (margin < -opts.tol * std::max(1.0, R)) ++c.violations;
    ++c.checked;
  }
  return c;
}

PropertyCheck check_b(const ConstructionTree& t, int n, const VerifyOptions& opts) {
  PropertyCheck c{'b', n};
  c.min_observed = std::numeric_limits<double>::infinity();
  c.threshold = 0.5 * t.schedule().gap_scale(n);
  const auto nodes = pick_nodes(t.count(n), opts, n, c.exhaustive);
  const double half = 0.5 * t.square_side(n);
  const double R = t.enlarged_radius(n);
  for (std::size_t j : nodes) {
    const Point d = t.centers(n)[j] - t.square_centers(n)[j];
    // Negative when the disc pokes out of its square.
    const double dist = half - std::max(std::abs(d.real()), std::abs(d.imag())) - R;
    c.min_observed = std::min(c.min_observed, dist);
    if (dist < c.threshold - opts.tol) ++c.violations;
    ++c.checked;
  }
  return c;
}

PropertyCheck check_c(const ConstructionTree& t, int n, const VerifyOptions& opts) {
  PropertyCheck c{'c', n};
  c.min_observed = std::numeric_limits<double>::infinity();
  c.threshold = 0.5 * t.schedule().gap_scale(n);
  const auto nodes = pick_nodes(t.count(n), opts, n, c.exhaustive);
  const double R = t.enlarged_radius(n);
  const auto& centers = t.centers(n);
  for (std::size_t j : nodes) {
    t.grid(n).visit(centers[j], 2.0 * R + 4.0 * c.threshold, [&](std::size_t k) {
      if (k == j) return;
      const double dist = std::abs(centers[j] - centers[k]) - 2.0 * R;
      c.min_observed = std::min(c.min_observed, dist);
      if (dist < c.threshold - opts.tol) ++c.violations;
      ++c.checked;
    });
  }
  return c;
}

}  // namespace

SeparationReport verify_separation(const ConstructionTree& tree, const VerifyOptions& opts) {
  SeparationReport r;
  for (int n = 1; n <= tree.depth(); ++n) {
    r.checks.push_back(check_a(tree, n, opts));
    r.checks.push_back(check_b(tree, n, opts));
    r.checks.push_back(check_c(tree, n, opts));
  }
  return r;
}

std::string summarize(const SeparationReport& report) {
  std::string out;
  for (const auto& c : report.checks)
    out += fmt::format("property ({}) level {}: {} {} checked, {} violations, min {:.6g} (threshold {:.6g}) {}\n",
                       c.property, c.level, c.exhaustive ? "exhaustive" : "sampled", c.checked,
                       c.violations, c.min_observed, c.threshold, c.pass() ? "pass" : "FAIL");
  return out;
}

}  // namespace rfl
