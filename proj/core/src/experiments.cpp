#include "rfl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rfl/oracle.hpp"
#include "rfl/parallel.hpp"
#include "rfl/random.hpp"

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_cap_outer_regions(Point xi) {
  const double t = std::abs(xi);
  if (t < 0.5 || t > 1.0 || std::abs(xi - Point(0, 1)) > 1.0) return false;
  const double a = std::arg(xi);
  return a <= kPi / 6 || a >= 5 * kPi / 6;
}

// Distance from xi to the boundaries of regions II and III.
double distance_to_cap_edges(Point xi) {
  const double t = std::abs(xi);
  double d = std::min({std::abs(t - 1.0), std::abs(t - 0.5), std::abs(std::abs(xi - Point(0, 1)) - 1.0)});
  for (double a : {kPi / 6, 5 * kPi / 6}) {
    const Point u = std::polar(1.0, a);
    const double s = std::max(0.0, (xi * std::conj(u)).real());
    d = std::min(d, std::abs(xi - s * u));
  }
  return d;
}

double grid_oracle(std::size_t cells) {
  // Regions II and III lie in [-1, 1] x [0, 1].
  const double h = 2.0 / static_cast<double>(cells);
  const std::size_t rows = cells / 2;
  const int sub = 24;
  CompensatedSum acc;
  for (std::size_t iy = 0; iy < rows; ++iy)
    for (std::size_t ix = 0; ix < cells; ++ix) {
      const Point c(-1.0 + (ix + 0.5) * h, (iy + 0.5) * h);
      if (distance_to_cap_edges(c) > h) {
        if (in_cap_outer_regions(c)) acc.add(eval_kernel(-c).imag() * h * h);
        continue;
      }
      const double hs = h / sub;
      for (int a = 0; a < sub; ++a)
        for (int b = 0; b < sub; ++b) {
          const Point p = c + Point((a + 0.5) * hs - 0.5 * h, (b + 0.5) * hs - 0.5 * h);
          if (in_cap_outer_regions(p)) acc.add(eval_kernel(-p).imag() * hs * hs);
        }
    }
  return acc.value() / kPi;
}

Point random_unit(Rng& rng) { return std::polar(1.0, rng.angle()); }

}  // namespace

CtildeResult compute_ctilde(double tol, std::size_t grid_cells) {
  if (!(tol > 0.0)) throw std::invalid_argument("compute_ctilde: tol must be positive");
  const Disc clip{Point(0, 1), 1.0};
  RadialOptions o;
  o.abs_tol = 1e-3 * tol;
  o.rel_tol = 1e-14;
  const auto region = [&](double lo, double hi) {
    o.window = SectorWindow{lo, hi};
    return radial_clip_integral(0.0, 0.5, 1.0, clip, o);
  };
  CtildeResult r;
  const auto I = region(kPi / 6, 5 * kPi / 6);
  const auto II = region(0.0, kPi / 6);
  const auto III = region(5 * kPi / 6, kPi);
  r.region_I = I.value;
  r.region_II = II.value;
  r.region_III = III.value;
  r.value = 2.0 * II.value.imag();
  r.error_bound = 2.0 * II.error_bound;

  QuadratureOptions q;
  q.abs_tol = 1e-3 * tol;
  const auto one_d = integrate_gk15_cosine(
      [](double t) { return Complex((1 - t * t) * std::sqrt(1 - t * t / 4), 0.0); }, 0.5, 1.0, q);
  r.one_dimensional = 2.0 / (3.0 * kPi) * one_d.value.real();
  r.grid_oracle = grid_oracle(grid_cells);
  r.polar_oracle = adaptive_quadrature(AnnulusCap{0.0, 1.0, clip}, 0.0, 1e-3 * tol).value.imag();
  return r;
}

ExperimentReport ctilde_report(double tol) {
  const CtildeResult c = compute_ctilde(tol);
  ExperimentReport rep;
  rep.name = "compute-ctilde";
  rep.parameters = {{"tol", tol}, {"configuration", "A(0,1) cap B(i,1), omega = 0"}};
  const auto row = [&](const std::string& what, Complex value, double bound) {
    Record r{"compute-ctilde." + what, 0, 0.0, 1.0, value, bound, std::abs(value) <= bound};
    rep.records.push_back(r);
    rep.pass = rep.pass && r.pass;
  };
  row("one_dimensional_minus_radial", c.one_dimensional - c.value, tol);
  row("grid_oracle_minus_radial", c.grid_oracle - c.value, 1e-4);
  row("polar_oracle_minus_radial", c.polar_oracle - c.value, tol);
  row("golden_minus_radial", kCtilde - c.value, 1e-6);
  row("region_I_imag", c.region_I.imag(), tol);
  row("region_III_minus_region_II_imag", c.region_III.imag() - c.region_II.imag(), tol);
  rep.summary = {{"ctilde", c.value},
                 {"one_dimensional", c.one_dimensional},
                 {"grid_oracle", c.grid_oracle},
                 {"polar_oracle", c.polar_oracle},
                 {"region_I", {c.region_I.real(), c.region_I.imag()}},
                 {"region_II", {c.region_II.real(), c.region_II.imag()}},
                 {"region_III", {c.region_III.real(), c.region_III.imag()}},
                 {"error_bound", c.error_bound},
                 {"pass", rep.pass}};
  return rep;
}

ExperimentReport check_reflectionless(std::size_t trials, std::uint64_t seed, KernelKind kernel, std::size_t threads) {
  if (trials == 0) throw std::invalid_argument("check_reflectionless: trials must be positive");
  struct Trial {
    Disc d;
    Point inside;
    Point outside;
  };
  Rng rng(seed);
  std::vector<Trial> in(trials);
  for (auto& t : in) {
    t.d = {Point(rng.uniform(-3, 3), rng.uniform(-3, 3)), rng.log_uniform(0.05, 3.0)};
    t.inside = rng.in_disc(t.d.center, 0.999 * t.d.radius);
    t.outside = t.d.center + t.d.radius * rng.uniform(1.05, 4.0) * random_unit(rng);
  }
  // The first trial puts the point at the center.
  in[0].inside = in[0].d.center;

  OracleOptions oo;
  oo.kernel = kernel;
  struct Out {
    Complex closed, oracle, control, control_closed;
  };
  const auto results = parallel_map(trials, threads, [&](std::size_t i) {
    const Trial& t = in[i];
    Out o;
    o.oracle = adaptive_quadrature(t.d, t.inside, 1e-10, oo).value;
    o.closed = kernel == KernelKind::conj_over_square ? disc_integral(t.d, t.inside).value : o.oracle;
    o.control = adaptive_quadrature(t.d, t.outside, 1e-11, oo).value;
    o.control_closed = disc_integral(t.d, t.outside).value;
    return o;
  });

  ExperimentReport rep;
  rep.name = "reflectionless";
  rep.parameters = {{"trials", trials}, {"seed", seed}, {"kernel", std::string(to_string(kernel))}};
  std::size_t passed = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Out& o = results[i];
    const bool closed_ok = o.closed == Complex(0.0, 0.0);
    const bool oracle_ok = std::abs(o.oracle) <= 1e-8;
    rep.records.push_back({"reflectionless.closed_form", 0, in[i].inside, in[i].d.radius, o.closed, 0.0, closed_ok});
    rep.records.push_back({"reflectionless.oracle", 0, in[i].inside, in[i].d.radius, o.oracle, 1e-8, oracle_ok});
    worst = std::max(worst, std::abs(o.oracle));
    passed += closed_ok && oracle_ok ? 1 : 0;
    if (kernel == KernelKind::conj_over_square) {
      const double diff = std::abs(o.control - o.control_closed);
      const double bound = std::max(1e-8 * std::abs(o.control_closed), 1e-12);
      rep.records.push_back({"reflectionless.exterior_control", 0, in[i].outside, in[i].d.radius,
                             o.control - o.control_closed, bound,
                             diff <= bound && std::abs(o.control_closed) > 0.0});
    }
  }
  for (const auto& r : rep.records) rep.pass = rep.pass && r.pass;
  rep.summary = {{"trials", trials}, {"passed", passed}, {"max_oracle_magnitude", worst}, {"pass", rep.pass}};
  return rep;
}

ExperimentReport check_oracle_equivalence(std::size_t trials, std::uint64_t seed, std::size_t threads) {
  Rng rng(seed);
  struct Case {
    std::string kind;
    Region region;
    Point omega;
    double size;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < trials; ++i) {
    const Disc d{Point(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.log_uniform(0.1, 2.0)};
    cases.push_back({"disc", d, d.center + d.radius * rng.uniform(1.02, 4.0) * random_unit(rng), d.radius});
  }
  cases.push_back({"disc", Disc{0.0, 1.0}, Point(2.0, 0.0), 1.0});
  for (std::size_t i = 0; i < trials; ++i) {
    const Point c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double rho = rng.log_uniform(0.1, 2.0);
    Polygon p;
    if (i % 2 == 0) {
      const auto v = Square{c, rho}.vertices();
      p.vertices.assign(v.begin(), v.end());
    } else {
      const std::size_t k = 3 + rng.index(6);
      std::vector<double> angles(k);
      for (auto& a : angles) a = rng.angle();
      std::sort(angles.begin(), angles.end());
      for (double a : angles) p.vertices.push_back(c + std::polar(rho, a));
    }
    Point omega;
    for (;;) {
      omega = c + Point(rng.uniform(-2 * rho, 2 * rho), rng.uniform(-2 * rho, 2 * rho));
      double dmin = std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < p.vertices.size(); ++e) {
        const Point a = p.vertices[e], b = p.vertices[(e + 1) % p.vertices.size()];
        const double s = std::clamp(((omega - a) * std::conj(b - a)).real() / std::norm(b - a), 0.0, 1.0);
        dmin = std::min(dmin, std::abs(omega - (a + s * (b - a))));
      }
      if (dmin > 1e-3 * rho) break;
    }
    cases.push_back({"polygon", p, omega, rho});
  }
  for (std::size_t i = 0; i < trials; ++i) {
    const Point c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double R = rng.log_uniform(0.2, 2.0);
    const Disc clip{c + R * rng.uniform(0.0, 1.5) * random_unit(rng), R * rng.uniform(0.2, 1.5)};
    cases.push_back({"annulus_cap", AnnulusCap{c, R, clip}, c, R});
  }
  cases.push_back({"annulus_cap", AnnulusCap{0.0, 1.0, Disc{Point(0, 1), 1.0}}, 0.0, 1.0});

  struct Out {
    Complex closed, oracle;
    double closed_err = 0.0;
  };
  const auto results = parallel_map(cases.size(), threads, [&](std::size_t i) {
    const Case& cs = cases[i];
    Out o;
    o.oracle = adaptive_quadrature(cs.region, cs.omega, 1e-12).value;
    IntegralResult r;
    if (const auto* d = std::get_if<Disc>(&cs.region)) r = disc_integral(*d, cs.omega);
    if (const auto* p = std::get_if<Polygon>(&cs.region)) r = polygon_integral(p->vertices, cs.omega);
    if (const auto* a = std::get_if<AnnulusCap>(&cs.region)) r = annulus_cap_integral(*a);
    o.closed = r.value;
    o.closed_err = r.error_bound;
    return o;
  });

  ExperimentReport rep;
  rep.name = "oracle-equivalence";
  rep.parameters = {{"trials", trials}, {"seed", seed}};
  nlohmann::json worst = nlohmann::json::object();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Out& o = results[i];
    const double mag = std::abs(o.oracle);
    const double bound = mag < 1e-6 ? 1e-8 : 1e-8 * mag;
    const Complex diff = o.closed - o.oracle;
    Record r{"oracle-equivalence." + cases[i].kind, 0, cases[i].omega, cases[i].size, diff, bound, std::abs(diff) <= bound};
    rep.records.push_back(r);
    rep.pass = rep.pass && r.pass;
    const double rel = std::abs(diff) / std::max(mag, 1e-6);
    worst[cases[i].kind] = std::max(worst.value(cases[i].kind, 0.0), rel);
  }
  rep.summary = {{"max_scaled_difference", worst}, {"cases", cases.size()}, {"pass", rep.pass}};
  return rep;
}

ExperimentReport check_measure(const ConstructionTree& tree, const MeasureCheckOptions& opts) {
  ExperimentReport rep;
  rep.name = "measure";
  rep.parameters = {{"schedule", tree.schedule().ratios()},
                    {"depth", tree.depth()},
                    {"growth_samples", opts.growth_samples},
                    {"seed", opts.seed}};
  const Disc everything{0.0, 3.0};
  nlohmann::json total = nlohmann::json::array();
  nlohmann::json refinement = nlohmann::json::array();
  for (int n = 0; n <= tree.depth(); ++n) {
    const LevelMeasure m(tree, n);
    const double mass = mass_on_disc(m, everything);
    rep.records.push_back({"measure.total_mass", n, 0.0, everything.radius, mass - 1.0, 1e-12, std::abs(mass - 1.0) <= 1e-12});
    total.push_back(mass);
    for (int k = 0; k <= n; ++k) {
      const auto dev = parallel_map(tree.count(k), opts.threads, [&](std::size_t j) {
        return std::abs(mass_on_disc(m, tree.enlarged_disc(k, j)) - tree.radius(k));
      });
      const auto it = std::max_element(dev.begin(), dev.end());
      const std::size_t j = static_cast<std::size_t>(it - dev.begin());
      rep.records.push_back({"measure.enlarged_disc_mass", n, tree.centers(k)[j], tree.enlarged_radius(k), *it, 1e-12,
                             *it <= 1e-12});
      refinement.push_back({{"measure_level", n}, {"disc_level", k}, {"max_deviation", *it}});
    }
  }

  nlohmann::json growth = nlohmann::json::array();
  std::vector<double> c0;
  for (int n = std::max(0, tree.depth() - 1); n <= tree.depth(); ++n) {
    const LevelMeasure m(tree, n);
    const GrowthReport g = growth_scan(m, opts.growth_samples, opts.seed, opts.threads);
    bool large_ok = true;
    for (const auto& s : g.samples) {
      const bool ok = std::isfinite(s.ratio) && (s.r < 1.0 || s.ratio <= 1.0 + 1e-12);
      large_ok = large_ok && ok;
      rep.records.push_back({"measure.growth", n, s.z, s.r, s.ratio, g.max_ratio, ok});
    }
    c0.push_back(g.max_ratio);
    growth.push_back({{"level", n}, {"C0", g.max_ratio}, {"large_radius_ratio_ok", large_ok}});
  }
  const double change = c0.size() == 2 ? std::abs(c0[1] - c0[0]) / c0[0] : 0.0;
  const bool stable = std::isfinite(c0.back()) && change <= 0.10;
  for (const auto& r : rep.records) rep.pass = rep.pass && r.pass;
  rep.pass = rep.pass && stable;
  rep.summary = {{"total_mass", total},       {"enlarged_disc_mass", refinement},
                 {"growth", growth},          {"C0", c0.back()},
                 {"C0_relative_change", change}, {"C0_stable", stable},
                 {"pass", rep.pass}};
  return rep;
}

ExperimentReport density_decay(const ConstructionTree& tree, int m, const DensityOptions& opts) {
  if (m < 1 || m > tree.depth()) throw std::invalid_argument("density_decay: need 1 <= m <= depth");
  const LevelMeasure mu(tree, m);
  ExperimentReport rep;
  rep.name = "density-decay";
  rep.parameters = {{"schedule", tree.schedule().ratios()}, {"depth", m}, {"samples", opts.samples}, {"seed", opts.seed}};
  nlohmann::json levels = nlohmann::json::array();
  double previous = std::numeric_limits<double>::infinity();
  bool covering_ok = true, bound_ok = true, decreasing = true;
  for (int n = 1; n <= m; ++n) {
    const double rho = 0.25 * tree.schedule().gap_scale(n);
    const double bound = 8.0 * std::sqrt(tree.radius(n) / tree.radius(n - 1));
    Rng rng(opts.seed + static_cast<std::uint64_t>(n));
    std::vector<Point> zs(opts.samples);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const std::size_t j = rng.index(tree.count(n));
      zs[i] = i % 2 == 0 ? tree.centers(n)[j] : rng.in_disc(tree.centers(n)[j], 2.0 * tree.enlarged_radius(n));
    }
    struct Out {
      std::size_t hits = 0;
      double density = 0.0;
    };
    const auto out = parallel_map(zs.size(), opts.threads, [&](std::size_t i) {
      Out o;
      const double R = tree.enlarged_radius(n);
      tree.grid(n).visit(zs[i], rho + R, [&](std::size_t j) {
        if (std::abs(zs[i] - tree.centers(n)[j]) < rho + R) ++o.hits;
      });
      o.density = mass_on_disc(mu, Disc{zs[i], rho}) / rho;
      return o;
    });
    std::size_t max_hits = 0;
    double max_density = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      max_hits = std::max(max_hits, out[i].hits);
      max_density = std::max(max_density, out[i].density);
      rep.records.push_back({"density-decay.covering", n, zs[i], rho, double(out[i].hits), 1.0, out[i].hits <= 1});
      rep.records.push_back({"density-decay.density", n, zs[i], rho, out[i].density, bound, out[i].density <= bound});
    }
    covering_ok = covering_ok && max_hits <= 1;
    bound_ok = bound_ok && max_density <= bound;
    decreasing = decreasing && max_density < previous;
    previous = max_density;
    levels.push_back({{"level", n}, {"radius", rho}, {"max_discs_met", max_hits}, {"density", max_density}, {"bound", bound}});
  }
  rep.pass = covering_ok && bound_ok && decreasing;
  rep.summary = {{"levels", levels},
                 {"covering_ok", covering_ok},
                 {"bound_ok", bound_ok},
                 {"strictly_decreasing", decreasing},
                 {"pass", rep.pass}};
  return rep;
}

std::vector<std::pair<double, Complex>> truncation_profile(const LevelMeasure& m, Point z, double rho_min,
                                                           double rho_max, std::size_t steps) {
  std::vector<std::pair<double, Complex>> out;
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : double(i) / double(steps - 1);
    const double rho = rho_min * std::pow(rho_max / rho_min, f);
    out.emplace_back(rho, truncated_t1(m, z, rho).value);
  }
  return out;
}

}  // namespace rfl
