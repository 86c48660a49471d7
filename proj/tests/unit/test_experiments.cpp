#include <doctest.h>

#include <cmath>

#include "rfl/experiments.hpp"

using namespace rfl;

namespace {

const ConstructionTree& tree2() {
  static const ConstructionTree t = ConstructionTree::build(RadiiSchedule::from_ratios(std::vector<std::uint64_t>{128, 128}), 2);
  return t;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("reflectionless check passes, Cauchy control does not") {
    const auto good = check_reflectionless(50, 1);
    CHECK(good.pass);
    CHECK(good.records.size() >= 100);
    const auto bad = check_reflectionless(50, 1, KernelKind::cauchy);
    CHECK_FALSE(bad.pass);
  }

  TEST_CASE("oracle equivalence") {
    const auto rep = check_oracle_equivalence(30, 2);
    CHECK(rep.pass);
    for (const auto& [kind, worst] : rep.summary["max_scaled_difference"].items()) CHECK(worst.get<double>() <= 1e-8);
  }

  TEST_CASE("ctilde") {
    const auto c = compute_ctilde(1e-10, 400);
    CHECK(c.value == doctest::Approx(kCtilde).epsilon(1e-10));
    CHECK(c.one_dimensional == doctest::Approx(kCtilde).epsilon(1e-10));
    CHECK(c.polar_oracle == doctest::Approx(kCtilde).epsilon(1e-8));
    CHECK(std::abs(c.grid_oracle - kCtilde) < 1e-3);
    CHECK(std::abs(c.region_I.imag()) < 1e-10);
    CHECK(c.region_III.imag() == doctest::Approx(c.region_II.imag()).epsilon(1e-10));
  }

  TEST_CASE("measure check on a two level tree") {
    MeasureCheckOptions o;
    o.growth_samples = 500;
    const auto rep = check_measure(tree2(), o);
    for (const auto& mass : rep.summary["total_mass"]) CHECK(mass.get<double>() == doctest::Approx(1.0).epsilon(1e-13));
    for (const auto& e : rep.summary["enlarged_disc_mass"]) CHECK(e["max_deviation"].get<double>() <= 1e-12);
    CHECK(std::isfinite(rep.summary["C0"].get<double>()));
  }

  TEST_CASE("pv failure: interior control misses the lower bound") {
    const auto t = ConstructionTree::build(RadiiSchedule::from_ratios(std::vector<std::uint64_t>{128, 128}), 2);
    PvOptions o;
    o.trials = 20;
    o.placement = BoundaryPlacement::interior;
    const auto rep = pv_failure(t, 2, o);
    CHECK_FALSE(rep.summary["annulus_lower_ok"].get<bool>());
    CHECK(rep.summary["additivity_ok"].get<bool>());
  }

  TEST_CASE("density decay") {
    DensityOptions o;
    o.samples = 200;
    const auto t = ConstructionTree::build(default_schedule(), 2);
    const auto rep = density_decay(t, 2, o);
    CHECK(rep.summary["covering_ok"].get<bool>());
    CHECK(rep.summary["bound_ok"].get<bool>());
    CHECK(rep.summary["strictly_decreasing"].get<bool>());
  }

  TEST_CASE("constant ratios give a constant density surrogate") {
    DensityOptions o;
    o.samples = 200;
    const auto rep = density_decay(tree2(), 2, o);
    CHECK(rep.summary["covering_ok"].get<bool>());
    CHECK_FALSE(rep.summary["strictly_decreasing"].get<bool>());
  }

  TEST_CASE("reports serialize") {
    ExperimentReport rep;
    rep.name = "x";
    rep.records.push_back({"x.a", 1, Point(0.5, -0.25), 2.0, Complex(1, 2), 3.0, false});
    rep.pass = false;
    const std::string csv = to_csv(rep);
    CHECK(csv == "experiment,level,z.re,z.im,radius,value.re,value.im,bound,pass\nx.a,1,0.5,-0.25,2,1,2,3,0\n");
    const auto j = nlohmann::json::parse(to_json(rep));
    CHECK(j["failed_records"].get<int>() == 1);
    CHECK_FALSE(j["pass"].get<bool>());
  }
}
