#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sfcaas/catalog.hpp"
#include "sfcaas/net_model.hpp"

namespace sfcaas {

// One tenant request: an ordered chain of VNF types that aggregate traffic
// from several source PoPs must traverse before reaching the destination.
struct SfcRequest {
  int id = 0;
  std::vector<int> chain;     // vnf type ids, in traversal order
  std::vector<int> sources;   // pop ids, no duplicates
  int destination = 0;        // pop id
  double demand_pps = 0.0;    // aggregate over all sources
  double packet_size_bytes = 1000.0;
  double arrival_time_s = 0.0;
  double lifetime_s = 0.0;
  double delay_budget_ms = 0.0;
};

// demand converted to Mbps: pps * bytes * 8 / 1e6.
double request_bandwidth_mbps(const SfcRequest& r);

// Loosest acceptable end-to-end latency: the worst source's shortest-delay
// distance to the destination, padded by 30%.
double delay_budget(const PhysicalNetwork& net, const SfcRequest& r);

struct WorkloadParams {
  double arrival_rate_rps = 0.03;        // Poisson arrivals
  double horizon_s = 2 * 30 * 24 * 3600; // two months
  double mean_lifetime_s = 3600.0;       // exponential
  double mean_chain_len = 10.0;          // shifted Poisson, min 1
  double mean_sources = 7.0;             // shifted Poisson, min 1
  std::pair<double, double> demand_range_pps{2000.0, 120000.0};
  double packet_size_bytes = 1000.0;
};

// Arrival-ordered requests over [0, horizon). Chains draw VNF types without
// replacement while the chain fits the catalog, with replacement otherwise;
// sources are distinct PoPs excluding the destination. Identical seeds
// reproduce the workload exactly.
std::vector<SfcRequest> generate_workload(std::uint64_t seed,
                                          const PhysicalNetwork& net,
                                          const Catalog& catalog,
                                          const WorkloadParams& params);

}  // namespace sfcaas
