#include <benchmark/benchmark.h>

#include "podseg/metrics.hpp"

namespace {

void BM_PkWindowDiff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = podseg::random_baseline(n, 0.05, 1);
  const auto hyp = podseg::random_baseline(n, 0.08, 2);
  const auto window = podseg::WindowConfig::half_mean_segment();
  for (auto _ : state) {
    benchmark::DoNotOptimize(podseg::pk(ref, hyp, window));
    benchmark::DoNotOptimize(podseg::window_diff(ref, hyp, window));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PkWindowDiff)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_Baseline(benchmark::State& state) {
  const auto ref = podseg::random_baseline(2000, 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(podseg::baseline_scores(ref, 0.05, 10, 0, podseg::WindowConfig::half_mean_segment()));
}
BENCHMARK(BM_Baseline);

}  // namespace
