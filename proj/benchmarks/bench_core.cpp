#include <benchmark/benchmark.h>

#include "pidtrunc/pidtrunc.hpp"

using namespace pidtrunc;

namespace {

SplitModel weak_model() {
  const auto spec = generate_spec(8, {1.0, 0.5, 0.1}, 1);
  return split_target(build_distribution(spec), spec);
}

}  // namespace

static void BM_BuildDistribution(benchmark::State& state) {
  const auto spec = generate_spec(static_cast<std::size_t>(state.range(0)), {1.0, 0.5, 0.1}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_distribution(spec));
}
BENCHMARK(BM_BuildDistribution)->Arg(8)->Arg(12)->Arg(16);

static void BM_ExactIk(benchmark::State& state) {
  const auto m = weak_model();
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(i_k(m.dist, m.target, m.features, k));
}
BENCHMARK(BM_ExactIk)->DenseRange(1, 5);

static void BM_Marginalize(benchmark::State& state) {
  const auto m = weak_model();
  const std::vector<VariableId> keep{m.features[0], m.features[3], m.target};
  for (auto _ : state) benchmark::DoNotOptimize(marginalize(m.dist, keep));
}
BENCHMARK(BM_Marginalize);

static void BM_Sample(benchmark::State& state) {
  const auto m = weak_model();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(m.dist, n, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Sample)->Arg(64)->Arg(4096)->Arg(1 << 16);

static void BM_EstimateIk(benchmark::State& state) {
  const auto m = weak_model();
  const auto emp = empirical(sample(m.dist, 4096, 7));
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(i_k_estimate(emp, m.target, m.features, k, true));
}
BENCHMARK(BM_EstimateIk)->DenseRange(1, 5);
BENCHMARK_MAIN();
