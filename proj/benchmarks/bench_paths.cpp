#include <benchmark/benchmark.h>

#include "sfcaas/net_model.hpp"
#include "sfcaas/rng.hpp"

using namespace sfcaas;

namespace {

PhysicalNetwork net_of(int n_pops) {
  TopologyParams p;
  p.n_pops = n_pops;
  return generate_topology(42, p);
}

}  // namespace

static void BM_ShortestPathDelay(benchmark::State& state) {
  PhysicalNetwork net = net_of(static_cast<int>(state.range(0)));
  Rng rng(7);
  for (auto _ : state) {
    int a = rng.uniform_int(0, net.pop_count() - 1);
    int b = rng.uniform_int(0, net.pop_count() - 1);
    benchmark::DoNotOptimize(shortest_path(net, a, b, PathMetric::Delay));
  }
}
BENCHMARK(BM_ShortestPathDelay)->Arg(25)->Arg(100);

static void BM_KCheapestPaths(benchmark::State& state) {
  PhysicalNetwork net = net_of(25);
  Rng rng(7);
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    int a = rng.uniform_int(0, net.pop_count() - 1);
    int b = rng.uniform_int(0, net.pop_count() - 1);
    benchmark::DoNotOptimize(k_cheapest_paths(net, a, b, k));
  }
}
BENCHMARK(BM_KCheapestPaths)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
