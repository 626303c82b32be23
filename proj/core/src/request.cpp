#include "sfcaas/request.hpp"

#include <algorithm>

#include "sfcaas/errors.hpp"

namespace sfcaas {

double request_bandwidth_mbps(const SfcRequest& r) {
  return r.demand_pps * r.packet_size_bytes * 8.0 / 1e6;
}

double delay_budget(const PhysicalNetwork& net, const SfcRequest& r) {
  double worst = 0.0;
  for (int s : r.sources) {
    Path p = shortest_path(net, s, r.destination, PathMetric::Delay);
    worst = std::max(worst, p.total_delay_ms);
  }
  return worst * 1.3;
}

namespace {

// min(1 + Poisson(mean - 1)) keeps the requested mean while never drawing 0.
int shifted_poisson(Rng& rng, double mean) {
  double lambda = std::max(0.0, mean - 1.0);
  return 1 + rng.poisson(lambda);
}

std::vector<int> draw_chain(Rng& rng, const Catalog& catalog, int len) {
  int n_types = static_cast<int>(catalog.vnf_types().size());
  std::vector<int> chain;
  chain.reserve(len);
  if (len <= n_types) {
    // Without replacement: repeatedly draw from the not-yet-used types.
    std::vector<int> remaining;
    for (const VnfType& v : catalog.vnf_types()) remaining.push_back(v.id);
    for (int i = 0; i < len; ++i) {
      std::size_t pick = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(remaining.size()) - 1));
      chain.push_back(remaining[pick]);
      remaining.erase(remaining.begin() + pick);
    }
  } else {
    for (int i = 0; i < len; ++i) {
      std::size_t pick = static_cast<std::size_t>(
          rng.uniform_int(0, n_types - 1));
      chain.push_back(catalog.vnf_types()[pick].id);
    }
  }
  return chain;
}

std::vector<int> draw_sources(Rng& rng, int n_pops, int destination, int count) {
  std::vector<int> candidates;
  candidates.reserve(n_pops - 1);
  for (int i = 0; i < n_pops; ++i)
    if (i != destination) candidates.push_back(i);
  count = std::min<int>(count, static_cast<int>(candidates.size()));
  std::vector<int> sources;
  for (int i = 0; i < count; ++i) {
    std::size_t pick = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1));
    sources.push_back(candidates[pick]);
    candidates.erase(candidates.begin() + pick);
  }
  return sources;
}

}  // namespace

std::vector<SfcRequest> generate_workload(std::uint64_t seed,
                                          const PhysicalNetwork& net,
                                          const Catalog& catalog,
                                          const WorkloadParams& params) {
  if (params.arrival_rate_rps <= 0) throw InvalidConfig("arrival rate must be positive");
  if (params.horizon_s < 0) throw InvalidConfig("horizon must not be negative");
  if (catalog.vnf_types().empty()) throw InvalidConfig("catalog has no vnf types");
  if (net.pop_count() < 2) throw InvalidConfig("workload needs at least two pops");

  Rng rng = Rng(seed).substream("workload");
  std::vector<SfcRequest> out;
  double t = 0.0;
  int id = 0;
  for (;;) {
    t += rng.exponential(1.0 / params.arrival_rate_rps);
    if (t >= params.horizon_s) break;
    SfcRequest r;
    r.id = id++;
    r.arrival_time_s = t;
    r.lifetime_s = rng.exponential(params.mean_lifetime_s);
    int chain_len = shifted_poisson(rng, params.mean_chain_len);
    r.chain = draw_chain(rng, catalog, chain_len);
    r.destination = static_cast<int>(rng.uniform_int(0, net.pop_count() - 1));
    int n_sources = shifted_poisson(rng, params.mean_sources);
    r.sources = draw_sources(rng, net.pop_count(), r.destination, n_sources);
    r.demand_pps = static_cast<double>(rng.uniform_int(
        static_cast<std::int64_t>(params.demand_range_pps.first),
        static_cast<std::int64_t>(params.demand_range_pps.second)));
    r.packet_size_bytes = params.packet_size_bytes;
    r.delay_budget_ms = delay_budget(net, r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sfcaas
