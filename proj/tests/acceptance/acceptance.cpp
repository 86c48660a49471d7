// One line per acceptance criterion: "criterion N: PASS|FAIL <details> (<seconds>s)".
// Usage: rfl_acceptance [--criterion N] [--threads T]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "rfl/cli.hpp"
#include "rfl/experiments.hpp"
#include "rfl/packing.hpp"
#include "rfl/verify.hpp"

using namespace rfl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string details;
};

std::size_t g_threads = 0;

const ConstructionTree& default_tree() {
  static const ConstructionTree t = ConstructionTree::build(default_schedule(), 3);
  return t;
}

Outcome reflectionless() {
  const auto rep = check_reflectionless(100, 1, KernelKind::conj_over_square, g_threads);
  return {rep.pass, fmt::format("{} pairs, max oracle |value| {:.3g}", rep.summary["trials"].get<std::size_t>(),
                                rep.summary["max_oracle_magnitude"].get<double>())};
}

Outcome oracle_equivalence() {
  const auto rep = check_oracle_equivalence(100, 1, g_threads);
  std::string worst;
  for (const auto& [kind, v] : rep.summary["max_scaled_difference"].items())
    worst += fmt::format(" {} {:.2g}", kind, v.get<double>());
  return {rep.pass, fmt::format("{} cases, max scaled difference:{}", rep.summary["cases"].get<std::size_t>(), worst)};
}

Outcome ctilde() {
  const auto c = compute_ctilde(1e-10);
  const double grid = std::abs(c.grid_oracle - c.value);
  const double golden = std::abs(kCtilde - c.value);
  return {grid <= 1e-4 && golden <= 1e-6,
          fmt::format("c~ = {:.15f}, grid oracle {:.8f} (diff {:.2g}), golden diff {:.2g}", c.value, c.grid_oracle,
                      grid, golden)};
}

Outcome packing() {
  struct Case {
    double R;
    std::uint64_t ratio;
  };
  bool pass = true;
  std::string details;
  for (const Case c : {Case{1.0, 128}, Case{1.0, 256}, Case{1.0 / 128, 128}}) {
    const Packing p = pack_squares(c.R, c.ratio);
    const double r = c.R / double(c.ratio);
    bool count_ok = p.squares.size() == c.ratio;
    bool disjoint = true;
    // Lattice cells are distinct integer pairs, so interiors are disjoint exactly.
    std::map<std::pair<std::int64_t, std::int64_t>, int> seen;
    for (const auto& cell : p.cells) disjoint = disjoint && seen.emplace(std::pair(cell.i, cell.j), 0).second;
    const double outer = c.R * (1 + 4 * std::sqrt(r / c.R));
    bool contained = true;
    for (const auto& q : p.squares)
      for (const Point v : q.vertices()) contained = contained && std::abs(v) <= outer;
    const double C = symmetric_difference_constant(p, c.R, c.ratio);
    const bool ok = count_ok && disjoint && contained && C <= 10.0;
    pass = pass && ok;
    details += fmt::format("[R={:.6g} r={:.6g}: count {} C={:.3f}{}] ", c.R, r, p.squares.size(), C, ok ? "" : " FAIL");
  }
  return {pass, details};
}

Outcome construction() {
  const auto t2 = ConstructionTree::build(RadiiSchedule::from_ratios(std::vector<std::uint64_t>{128, 128}), 2);
  const auto exhaustive = verify_separation(t2);
  bool all_exhaustive = true;
  for (const auto& c : exhaustive.checks) all_exhaustive = all_exhaustive && c.exhaustive;
  const auto t3 = ConstructionTree::build(RadiiSchedule::from_ratios(std::vector<std::uint64_t>{128, 128, 128}), 3);
  VerifyOptions o;
  o.exhaustive_limit = 1u << 15;
  o.samples = 100000;
  const auto sampled = verify_separation(t3, o);
  std::size_t v2 = 0, v3 = 0;
  for (const auto& c : exhaustive.checks) v2 += c.violations;
  for (const auto& c : sampled.checks) v3 += c.violations;
  return {exhaustive.pass() && all_exhaustive && sampled.pass(),
          fmt::format("depth 2 exhaustive: {} violations; depth 3 sampled: {} violations", v2, v3)};
}

Outcome measure() {
  MeasureCheckOptions o;
  o.threads = g_threads;
  const auto rep = check_measure(default_tree(), o);
  const auto& g = rep.summary["growth"];
  double mass_dev = 0.0, disc_dev = 0.0;
  for (const auto& m : rep.summary["total_mass"]) mass_dev = std::max(mass_dev, std::abs(m.get<double>() - 1.0));
  for (const auto& e : rep.summary["enlarged_disc_mass"]) disc_dev = std::max(disc_dev, e["max_deviation"].get<double>());
  return {rep.pass, fmt::format("max |mass - 1| {:.3g}, max enlarged deviation {:.3g}, C0 {:.4f} -> {:.4f} (change {:.3f})",
                                mass_dev, disc_dev,
                                g[0]["C0"].get<double>(), g[1]["C0"].get<double>(),
                                rep.summary["C0_relative_change"].get<double>())};
}

Outcome boundedness() {
  BoundednessOptions o;
  o.threads = g_threads;
  const auto rep = boundedness_sweep(default_tree(), o);
  const auto& s = rep.summary;
  return {rep.pass,
          fmt::format("points {}+{}, sup ratio {:.3f}, C stable {}, profile dominated {}, fast ok {}, far ok {}",
                      s["levels"][0]["points"].get<std::size_t>(), s["levels"][1]["points"].get<std::size_t>(),
                      s["sup_ratio"].get<double>(), s["measured_C_stable"].get<bool>(),
                      s["profile_dominated"].get<bool>(), s["fast_matches_exact"].get<bool>(),
                      s["far_field_ok"].get<bool>())};
}

Outcome pv_failure_check() {
  PvOptions o;
  o.threads = g_threads;
  const auto rep = pv_failure(default_tree(), 3, o);
  const auto& s = rep.summary;
  std::string mins;
  for (const auto& l : s["min_abs_annulus_by_level"])
    mins += fmt::format(" L{}={:.4g}", l["level"].get<int>(), l["min_abs_annulus"].get<double>());
  std::string counts;
  for (const auto& l : s["counting"])
    counts += fmt::format(" L{}: factor {:.4f} vs {:.4f}", l["level"].get<int>(), l["decay_factor"].get<double>(),
                          l["required"].get<double>());
  return {rep.pass, fmt::format("c~/4 {:.5f}, min |annulus|{}; lower bound {}, additivity {}, counting {} ({})",
                                s["ctilde_over_4"].get<double>(), mins, s["annulus_lower_ok"].get<bool>(),
                                s["additivity_ok"].get<bool>(), s["counting_ok"].get<bool>(), counts)};
}

Outcome density() {
  DensityOptions o;
  o.threads = g_threads;
  const auto rep = density_decay(default_tree(), 3, o);
  std::string levels;
  for (const auto& l : rep.summary["levels"])
    levels += fmt::format(" L{}: {:.4g} <= {:.4g};", l["level"].get<int>(), l["density"].get<double>(),
                          l["bound"].get<double>());
  return {rep.pass, fmt::format("covering {}, decreasing {},{}", rep.summary["covering_ok"].get<bool>(),
                                rep.summary["strictly_decreasing"].get<bool>(), levels)};
}

std::map<std::string, std::string> data_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.ends_with(".meta.json")) continue;
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    out[name] = ss.str();
  }
  return out;
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "rfl-acceptance-determinism";
  std::map<std::string, std::string> runs[2];
  const char* threads[2] = {"1", "4"};
  for (int k = 0; k < 2; ++k) {
    const fs::path dir = base / threads[k];
    fs::remove_all(dir);
    std::ostringstream out, err;
    for (const char* exp : {"reflectionless", "oracle-equivalence", "measure", "density-decay", "pv-failure"}) {
      rfl::cli::run({"--schedule", "128,128", "--depth", "2", "--trials", "20", "--samples", "300", "--seed", "3",
                     "--threads", threads[k], "--out", dir.string(), "experiment", exp},
                    out, err);
    }
    rfl::cli::run({"--schedule", "128,128", "--depth", "2", "--threads", threads[k], "--out", dir.string(), "build"},
                  out, err);
    runs[k] = data_files(dir);
  }
  bool same = runs[0].size() == runs[1].size() && !runs[0].empty();
  std::string diff;
  for (const auto& [name, body] : runs[0]) {
    const auto it = runs[1].find(name);
    if (it == runs[1].end() || it->second != body) {
      same = false;
      diff += " " + name;
    }
  }
  return {same, fmt::format("{} data files compared, threads 1 vs 4{}", runs[0].size(),
                            diff.empty() ? ", byte-identical" : ", differ:" + diff)};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion") only = std::atoi(argv[++i]);
    else if (a == "--threads") g_threads = std::strtoull(argv[++i], nullptr, 10);
  }
  const std::vector<std::function<Outcome()>> criteria = {reflectionless, oracle_equivalence, ctilde,
                                                          packing,        construction,       measure,
                                                          boundedness,    pv_failure_check,   density,
                                                          determinism};
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && only != int(k + 1)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("criterion {}: {} {} ({:.1f}s)\n", k + 1, o.pass ? "PASS" : "FAIL", o.details, secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
