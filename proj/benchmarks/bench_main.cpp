#include <benchmark/benchmark.h>

#include "fppa/metrics.hpp"
#include "fppa/pa_graph.hpp"
#include "fppa/rng.hpp"
#include "fppa/tail_fit.hpp"

using namespace fppa;

static void BM_GenerateFpa(benchmark::State& state) {
  const auto t = static_cast<Vertex>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_fpa({2, -1.0}, t, ++seed).edge_count());
  state.SetItemsProcessed(state.iterations() * t);
}
BENCHMARK(BM_GenerateFpa)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_GenerateVpa(benchmark::State& state) {
  const auto t = static_cast<Vertex>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(VpaParams{0.6, 0.5}, t, ++seed).edge_count());
  state.SetItemsProcessed(state.iterations() * t);
}
BENCHMARK(BM_GenerateVpa)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

namespace {

const GrowthGraph& bench_graph() {
  static const GrowthGraph g =
      assign_weights(generate_fpa({2, -1.0}, 200000, 1), WeightDistribution::exponential(1.0), 2);
  return g;
}

}  // namespace

static void BM_WeightedDistance(benchmark::State& state) {
  DistanceEngine engine(bench_graph());
  Rng rng(3);
  for (auto _ : state) {
    const auto [u, v] = sample_typical_pair(bench_graph().size(), rng);
    benchmark::DoNotOptimize(engine.weighted_distance(u, v).weight);
  }
}
BENCHMARK(BM_WeightedDistance)->Unit(benchmark::kMillisecond);

static void BM_PairDistances(benchmark::State& state) {
  DistanceEngine engine(bench_graph());
  Rng rng(3);
  for (auto _ : state) {
    const auto [u, v] = sample_typical_pair(bench_graph().size(), rng);
    benchmark::DoNotOptimize(engine.pair_distances(u, v).d_L);
  }
}
BENCHMARK(BM_PairDistances)->Unit(benchmark::kMicrosecond);

static void BM_GraphDistance(benchmark::State& state) {
  DistanceEngine engine(bench_graph());
  Rng rng(3);
  const bool both = state.range(0) != 0;
  for (auto _ : state) {
    const auto [u, v] = sample_typical_pair(bench_graph().size(), rng);
    benchmark::DoNotOptimize(both ? engine.graph_distance_bidirectional(u, v) : engine.graph_distance(u, v));
  }
}
BENCHMARK(BM_GraphDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_Hill(benchmark::State& state) {
  const auto deg = degrees_at(bench_graph(), bench_graph().size());
  const std::vector<std::uint32_t> observed(deg.begin() + 1, deg.end());
  for (auto _ : state) benchmark::DoNotOptimize(fit_tail_exponent(observed).tau_hat);
}
BENCHMARK(BM_Hill)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
