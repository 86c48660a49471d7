#include <benchmark/benchmark.h>

#include "rfl/kernel.hpp"
#include "rfl/oracle.hpp"

namespace {

void BM_DiscClosedForm(benchmark::State& state) {
  const rfl::Disc d{rfl::Point(0.1, 0.2), 0.5};
  rfl::Point w(1.5, -0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfl::disc_integral(d, w));
    w += 1e-12;
  }
}
BENCHMARK(BM_DiscClosedForm);

void BM_SquareBoundaryReduction(benchmark::State& state) {
  const rfl::Square q{rfl::Point(0.5, 0.5), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(rfl::square_integral(q, rfl::Point(2.0, 0.3)));
}
BENCHMARK(BM_SquareBoundaryReduction);

void BM_OracleDisc(benchmark::State& state) {
  const rfl::Disc d{0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(rfl::adaptive_quadrature(d, 2.0, 1e-10));
}
BENCHMARK(BM_OracleDisc)->Unit(benchmark::kMillisecond);

}  // namespace
