#include <benchmark/benchmark.h>

#include "rfl/measure.hpp"

namespace {

const rfl::ConstructionTree& tree() {
  static const rfl::ConstructionTree t = rfl::ConstructionTree::build(rfl::default_schedule(), 3);
  return t;
}

void BM_Build(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rfl::ConstructionTree::build(rfl::default_schedule(), depth));
}
BENCHMARK(BM_Build)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_T1Exact(benchmark::State& state) {
  const rfl::LevelMeasure m(tree(), static_cast<int>(state.range(0)));
  const rfl::Point z = tree().centers(1)[7] + 1.5 * tree().radius(1);
  for (auto _ : state) benchmark::DoNotOptimize(rfl::t1_exact(m, z));
}
BENCHMARK(BM_T1Exact)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_T1Fast(benchmark::State& state) {
  const rfl::LevelMeasure m(tree(), static_cast<int>(state.range(0)));
  const rfl::FastEvaluator fe(m);
  const rfl::Point z = tree().centers(1)[7] + 1.5 * tree().radius(1);
  for (auto _ : state) benchmark::DoNotOptimize(fe.evaluate(z, 1e-6));
}
BENCHMARK(BM_T1Fast)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
