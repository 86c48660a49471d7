#include <algorithm>
#include <cmath>
#include <limits>

#include "rfl/experiments.hpp"
#include "rfl/parallel.hpp"
#include "rfl/random.hpp"

namespace rfl {

namespace {

enum class Stratum { hole, square_edge, far };

const char* name(Stratum s) {
  switch (s) {
    case Stratum::hole: return "hole";
    case Stratum::square_edge: return "square_edge";
    case Stratum::far: return "far";
  }
  return "";
}

struct Sample {
  Stratum stratum;
  int scale;  // n for holes/edges: inside E^(n-1), outside the level-n squares
  Point z;
};

std::vector<Sample> make_grid(const ConstructionTree& tree, int m, std::size_t points, std::uint64_t seed) {
  const std::size_t strata = 2 * static_cast<std::size_t>(m) + 1;
  const std::size_t per = (points + strata - 1) / strata;
  Rng rng(seed);
  std::vector<Sample> out;
  for (int n = 1; n <= m; ++n) {
    for (std::size_t i = 0; i < per;) {
      const std::size_t j = rng.index(tree.count(n - 1));
      const Point z = rng.in_disc(tree.centers(n - 1)[j], tree.enlarged_radius(n - 1));
      if (tree.locate(z, n, LocateMode::square)) continue;
      out.push_back({Stratum::hole, n, z});
      ++i;
    }
    const double half = 0.5 * tree.square_side(n);
    const double offset = 1e-3 * tree.schedule().gap_scale(n);
    for (std::size_t i = 0; i < per; ++i) {
      const Square q = tree.square(n, rng.index(tree.count(n)));
      const double u = rng.uniform(-half, half);
      const double side = half + (i % 2 == 0 ? offset : -offset);
      const Point local[4] = {{u, side}, {u, -side}, {side, u}, {-side, u}};
      out.push_back({Stratum::square_edge, n, q.center + local[rng.index(4)]});
    }
  }
  for (std::size_t i = 0; i < per; ++i) out.push_back({Stratum::far, 0, std::polar(rng.uniform(4.0, 20.0), rng.angle())});
  return out;
}

struct PointResult {
  Complex exact;
  Complex fast;
  double fast_bound = 0.0;
  std::size_t fast_terms = 0;
  double epsilon = 0.0;
  std::vector<double> ratios;  // |c_k| / (sqrt(s_k) + sqrt(eps / r_{k-1})), k = 1..q-1
  std::vector<double> contributions;
};

}  // namespace

ExperimentReport boundedness_sweep(const ConstructionTree& tree, const BoundednessOptions& opts) {
  std::vector<int> levels = opts.levels;
  if (levels.empty()) levels = {std::max(1, tree.depth() - 1), tree.depth()};
  for (int m : levels)
    if (m < 1 || m > tree.depth()) throw std::invalid_argument("boundedness_sweep: level outside the tree");

  ExperimentReport rep;
  rep.name = "boundedness";
  rep.parameters = {{"schedule", tree.schedule().ratios()}, {"levels", levels},     {"points", opts.points},
                    {"seed", opts.seed},                   {"fast_tol", opts.fast_tol}};

  nlohmann::json per_level = nlohmann::json::array();
  std::vector<double> sups;
  std::vector<double> measured_c;
  bool fast_ok = true, far_ok = true, profile_ok = true;
  for (int m : levels) {
    const LevelMeasure mu(tree, m);
    const FastEvaluator fast(mu);
    const auto grid = make_grid(tree, m, opts.points, opts.seed);
    const auto results = parallel_map(grid.size(), opts.threads, [&](std::size_t i) {
      const Sample& s = grid[i];
      PointResult r;
      r.exact = t1_exact(mu, s.z).value;
      FastStats st;
      const auto f = fast.evaluate(s.z, opts.fast_tol, &st);
      r.fast = f.value;
      r.fast_bound = f.error_bound;
      r.fast_terms = st.terms;
      if (s.stratum != Stratum::hole || s.scale < 2) return r;
      r.epsilon = mu.distance_to_support(s.z);
      std::vector<std::size_t> chain;
      for (int k = 0; k < s.scale; ++k) chain.push_back(*tree.locate(s.z, k));
      for (int k = 1; k < s.scale; ++k) {
        const auto [a0, a1] = tree.descendants(k - 1, chain[k - 1], m);
        const auto [b0, b1] = tree.descendants(k, chain[k], m);
        const Complex c = t1_range(mu, s.z, a0, b0) + t1_range(mu, s.z, b1, a1);
        const double profile = std::sqrt(tree.schedule().s(k)) + std::sqrt(r.epsilon / tree.radius(k - 1));
        r.contributions.push_back(std::abs(c));
        r.ratios.push_back(std::abs(c) / profile);
      }
      return r;
    });

    double sup = 0.0, worst_fast = 0.0;
    std::size_t terms = 0;
    std::vector<double> c_by_scale(m, 0.0);
    nlohmann::json strata = nlohmann::json::object();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Sample& s = grid[i];
      const PointResult& r = results[i];
      const double v = std::abs(r.exact);
      sup = std::max(sup, v);
      const std::string key = std::string(name(s.stratum)) + (s.stratum == Stratum::far ? "" : "_" + std::to_string(s.scale));
      strata[key] = std::max(strata.value(key, 0.0), v);
      const double diff = std::abs(r.fast - r.exact);
      worst_fast = std::max(worst_fast, diff);
      terms += r.fast_terms;
      rep.records.push_back({"boundedness.t1_fast_minus_exact", m, s.z, 0.0, r.fast - r.exact, opts.fast_tol, diff <= opts.fast_tol});
      fast_ok = fast_ok && diff <= opts.fast_tol;
      if (s.stratum == Stratum::far) {
        const double bound = 2.0 / (std::abs(s.z) - 2.0);
        rep.records.push_back({"boundedness.far_field", m, s.z, 0.0, r.exact, bound, v <= bound});
        far_ok = far_ok && v <= bound;
      } else {
        rep.records.push_back({"boundedness.t1_" + std::string(name(s.stratum)), m, s.z, 0.0, r.exact,
                               std::numeric_limits<double>::infinity(), std::isfinite(v)});
      }
      for (std::size_t k = 0; k < r.ratios.size(); ++k) {
        c_by_scale[k + 1] = std::max(c_by_scale[k + 1], r.ratios[k]);
        rep.records.push_back({"boundedness.scale_" + std::to_string(k + 1), m, s.z, r.epsilon,
                               Complex(r.contributions[k], 0.0), r.ratios[k], true});
      }
    }
    const double C = *std::max_element(c_by_scale.begin(), c_by_scale.end());
    bool dominated = true;
    for (int k = 1; k < m; ++k) dominated = dominated && c_by_scale[k] <= 2.0 * c_by_scale[1];
    profile_ok = profile_ok && dominated;
    sups.push_back(sup);
    measured_c.push_back(C);
    nlohmann::json cs = nlohmann::json::array();
    for (int k = 1; k < m; ++k) cs.push_back(c_by_scale[k]);
    per_level.push_back({{"level", m},
                         {"points", grid.size()},
                         {"sup_abs_t1", sup},
                         {"sup_by_stratum", strata},
                         {"measured_C_by_scale", cs},
                         {"measured_C", C},
                         {"profile_dominated", dominated},
                         {"max_fast_difference", worst_fast},
                         {"mean_fast_terms", double(terms) / double(grid.size())},
                         {"exact_terms", tree.count(m)}});
  }

  const double sup_ratio = sups.size() >= 2 ? sups.back() / sups.front() : 1.0;
  const bool sup_stable = sup_ratio >= 0.5 && sup_ratio <= 2.0;
  const bool c_stable = measured_c.size() < 2 || measured_c.back() <= 2.0 * measured_c.front();
  rep.pass = sup_stable && c_stable && profile_ok && fast_ok && far_ok;
  rep.summary = {{"levels", per_level},  {"sup_ratio", sup_ratio},  {"sup_stable", sup_stable},
                 {"measured_C_stable", c_stable}, {"profile_dominated", profile_ok},
                 {"fast_matches_exact", fast_ok}, {"far_field_ok", far_ok}, {"pass", rep.pass}};
  return rep;
}

}  // namespace rfl
