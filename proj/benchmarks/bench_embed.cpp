#include <benchmark/benchmark.h>

#include <vector>

#include "sfcaas/catalog.hpp"
#include "sfcaas/heuristics.hpp"
#include "sfcaas/ilp.hpp"
#include "sfcaas/net_model.hpp"
#include "sfcaas/request.hpp"
#include "sfcaas/rng.hpp"
#include "sfcaas/virtual_topology.hpp"

using namespace sfcaas;

namespace {

struct Scenario {
  PhysicalNetwork net;
  Catalog catalog;
  std::vector<SfcRequest> requests;
};

Scenario scenario() {
  PhysicalNetwork net = generate_topology(42, TopologyParams{});
  Catalog catalog = default_catalog(42);
  WorkloadParams wp;
  wp.horizon_s = 40000.0;
  wp.arrival_rate_rps = 0.01;
  auto reqs = generate_workload(42, net, catalog, wp);
  return {std::move(net), std::move(catalog), std::move(reqs)};
}

}  // namespace

static void BM_Translate(benchmark::State& state) {
  Scenario s = scenario();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(translate(s.requests[i], s.catalog));
    i = (i + 1) % s.requests.size();
  }
}
BENCHMARK(BM_Translate);

static void BM_BaselineEmbed(benchmark::State& state) {
  Scenario s = scenario();
  PathCache cache(s.net);
  std::size_t i = 0;
  for (auto _ : state) {
    const SfcRequest& r = s.requests[i];
    VirtualTopology vt = translate(r, s.catalog);
    benchmark::DoNotOptimize(
        baseline_embed(s.net, s.catalog, vt, r.delay_budget_ms, &cache));
    i = (i + 1) % s.requests.size();
  }
}
BENCHMARK(BM_BaselineEmbed);

static void BM_SpinEmbed(benchmark::State& state) {
  Scenario s = scenario();
  PathCache cache(s.net);
  int k = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const SfcRequest& r = s.requests[i];
    VirtualTopology vt = translate(r, s.catalog);
    benchmark::DoNotOptimize(
        spin_embed(s.net, s.catalog, vt, r.delay_budget_ms, k, &cache));
    i = (i + 1) % s.requests.size();
  }
}
BENCHMARK(BM_SpinEmbed)->Arg(4)->Arg(8);

static void BM_ExactSolveTiny(benchmark::State& state) {
  // small fixed instance so the exhaustive search stays comparable run to run
  std::vector<PopNode> pops{
      {0, 4, 0, 0.011}, {1, 4, 0, 0.013}, {2, 4, 0, 0.017}, {3, 4, 0, 0.019}};
  std::vector<PhysLink> links{
      {0, 1, 2000.0, -1.0, 10.0, 0.0001},
      {1, 2, 2000.0, -1.0, 12.0, 0.0002},
      {2, 3, 2000.0, -1.0, 14.0, 0.0001},
      {0, 3, 2000.0, -1.0, 16.0, 0.0003},
  };
  PhysicalNetwork net(std::move(pops), std::move(links));
  std::vector<VnfType> types{{0, "fw", 9000.0, false, 0.0, 0.0, 1.0}};
  std::vector<Flavor> flavors{{"micro", 1, 1.0, 0.0125, 1, 1.0}};
  Catalog catalog(std::move(types), std::move(flavors), CostModel{});
  SfcRequest r;
  r.id = 1;
  r.chain = {0};
  r.sources = {0};
  r.destination = 2;
  r.demand_pps = 17000.0;
  r.delay_budget_ms = 1e9;
  VirtualTopology vt = translate(r, catalog);
  IlpModel m = build_model(net, vt, catalog);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(m));
}
BENCHMARK(BM_ExactSolveTiny);
