#include <benchmark/benchmark.h>

#include <random>

#include "podseg/corpus.hpp"
#include "podseg/textsplit.hpp"
#include "podseg/texttiling.hpp"

namespace {

std::vector<podseg::Vector> vectors(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<podseg::Vector> v(n, podseg::Vector(dim));
  for (auto& row : v) {
    for (double& x : row) x = g(rng);
  }
  return v;
}

void BM_DynamicSplit(benchmark::State& state) {
  const auto v = vectors(static_cast<std::size_t>(state.range(0)), 50);
  const podseg::SegmentScorer scorer(v);
  for (auto _ : state) benchmark::DoNotOptimize(podseg::dynamic_split(scorer, 2.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DynamicSplit)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_GreedySplit(benchmark::State& state) {
  const auto v = vectors(static_cast<std::size_t>(state.range(0)), 50);
  const podseg::SegmentScorer scorer(v);
  for (auto _ : state) benchmark::DoNotOptimize(podseg::greedy_split(scorer, 2.0));
}
BENCHMARK(BM_GreedySplit)->RangeMultiplier(2)->Range(64, 1024);

void BM_Tile(benchmark::State& state) {
  podseg::SynthConfig cfg;
  cfg.episodes = 1;
  cfg.topics_min = cfg.topics_max = static_cast<std::size_t>(state.range(0));
  const auto episode = podseg::synth_corpus(cfg).front();
  for (auto _ : state) benchmark::DoNotOptimize(podseg::tile(episode.transcript));
  state.counters["sentences"] = static_cast<double>(episode.transcript.size());
}
BENCHMARK(BM_Tile)->Arg(3)->Arg(6)->Arg(12);

}  // namespace
