#pragma once

#include <string>
#include <vector>

#include "sfcaas/virtual_topology.hpp"

namespace sfcaas {

// Hourly money flows of one embedded chain. total is what the provider pays
// to run the chain; revenue is what the tenant pays (deployment cost plus a
// fixed margin per instance); profit = revenue - total.
struct CostBreakdown {
  double instance_cost = 0.0;
  double data_bandwidth_cost = 0.0;
  double sync_bandwidth_cost = 0.0;
  double flat_sync_cost = 0.0;
  double total = 0.0;
  double revenue = 0.0;
  double profit = 0.0;

  // The placement-dependent part (instances + carried bandwidth); the flat
  // sync fee is a constant of the virtual topology.
  double objective() const {
    return instance_cost + data_bandwidth_cost + sync_bandwidth_cost;
  }
};

// Placement maps every instance to a PoP; routes map every virtual link to
// the pop sequence its traffic follows (a single pop when co-located).
struct Embedding {
  std::vector<int> placement;
  std::vector<std::vector<int>> routes;
  CostBreakdown cost;
};

struct Violation {
  std::string constraint;  // "pin", "uniqueness", "capacity", "bandwidth", "routing", "delay"
  std::string detail;
};

// Requires a structurally complete embedding (throws InvalidEmbedding
// otherwise): full placement, one contiguous route per link whose endpoints
// match the placements.
CostBreakdown evaluate_cost(const PhysicalNetwork& net, const VirtualTopology& vt,
                            const Embedding& emb, const Catalog& catalog);

// All violated constraints against the network's *current* residual state;
// empty result means the embedding can be allocated as-is.
std::vector<Violation> check_feasibility(const PhysicalNetwork& net,
                                         const VirtualTopology& vt,
                                         const Embedding& emb,
                                         double delay_budget_ms);

// End-to-end latency: each source is served along its best routed instance
// sequence; the request-level delay is the slowest source's figure.
double routed_end_to_end_delay(const PhysicalNetwork& net,
                               const VirtualTopology& vt, const Embedding& emb);

// Slots and bandwidth the embedding consumes, keyed for allocate/release.
ResourceDelta resource_delta(const PhysicalNetwork& net, const VirtualTopology& vt,
                             const Embedding& emb);

}  // namespace sfcaas
