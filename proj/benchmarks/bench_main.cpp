#include <benchmark/benchmark.h>

#include <map>

#include "seriation/graph.hpp"
#include "seriation/graphon.hpp"
#include "seriation/ordering.hpp"
#include "seriation/spectral.hpp"

namespace {

void BM_SampleGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const seriation::Graphon graphon = seriation::Graphon::affine_distance(0.8, 1.0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        seriation::SampledGraph::sample(graphon, n, 1.0, seed++));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleGraph)->Arg(200)->Arg(400)->Arg(800)->Complexity();

void BM_FiedlerPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const seriation::Graphon graphon = seriation::Graphon::affine_distance(0.8, 1.0);
  const seriation::SampledGraph g =
      seriation::SampledGraph::sample(graphon, n, 1.0, 42);
  const seriation::LaplacianMatrix lap = seriation::laplacian(g.dense_adjacency());
  for (auto _ : state) {
    benchmark::DoNotOptimize(seriation::fiedler_pair(lap));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FiedlerPair)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void BM_KendallTau(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::map<int, double> values;
  std::uint64_t x = 88172645463325252ULL;
  for (int i = 0; i < n; ++i) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    values[i] = static_cast<double>(x);
  }
  const seriation::Ordering pi = seriation::Ordering::from_values(values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seriation::kendall_tau(pi));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_KendallTau)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();

}  // namespace

BENCHMARK_MAIN();
