#pragma once

#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "sfcaas/rng.hpp"

namespace sfcaas {

// Point of presence: a small datacenter that hosts VNF instances.
// One slot is the footprint of one micro instance.
struct PopNode {
  int id = 0;
  int slot_capacity = 0;
  int used_slots = 0;
  double instance_price = 0.0;  // $/hour for one micro slot at this PoP
};

// Undirected physical link with a single residual pool shared by both
// directions. bandwidth_price is the $/(Mbps*hour) charged for traffic
// carried over the link.
struct PhysLink {
  int a = 0;
  int b = 0;
  double bandwidth_capacity = 0.0;   // Mbps
  double residual_bandwidth = -1.0;  // Mbps; negative means "fresh" (= capacity)
  double propagation_delay_ms = 0.0;
  double bandwidth_price = 0.0;
};

// A loop-free walk through the substrate. A single-node path (pops.size()==1)
// has zero delay and infinite bottleneck.
struct Path {
  std::vector<int> pops;
  double total_delay_ms = 0.0;
  double bottleneck_bandwidth = std::numeric_limits<double>::infinity();

  bool single_node() const { return pops.size() <= 1; }
  std::size_t hop_count() const { return pops.empty() ? 0 : pops.size() - 1; }
};

enum class PathMetric { Delay, Cost };

// Bandwidth bookkeeping runs on integer units of 1 bps. Accumulating raw
// doubles would drift by ulps across allocate/release cycles and break
// byte-identical replays; integers make the ledger exactly reversible.
namespace bw {
constexpr double kUnitsPerMbps = 1e6;
inline std::int64_t units(double mbps) {
  return static_cast<std::int64_t>(mbps * kUnitsPerMbps + (mbps >= 0 ? 0.5 : -0.5));
}
inline double mbps(std::int64_t units) {
  return static_cast<double>(units) / kUnitsPerMbps;
}
}  // namespace bw

// Resource footprint of one embedding: slots per PoP and bandwidth units per
// link (by link index). Ordered maps keep iteration deterministic.
struct ResourceDelta {
  std::map<int, int> slots_by_pop;
  std::map<int, std::int64_t> bandwidth_units_by_link;

  bool empty() const {
    return slots_by_pop.empty() && bandwidth_units_by_link.empty();
  }
};

class PhysicalNetwork {
 public:
  PhysicalNetwork() = default;
  // Validates ids (must be 0..n-1), distinct endpoints, no duplicate links,
  // positive capacities and connectivity of the whole graph.
  PhysicalNetwork(std::vector<PopNode> pops, std::vector<PhysLink> links);

  int pop_count() const { return static_cast<int>(pops_.size()); }
  const PopNode& pop(int id) const;
  const std::vector<PopNode>& pops() const { return pops_; }
  const std::vector<PhysLink>& links() const { return links_; }
  const PhysLink& link(int index) const;

  // Index into links() for the undirected pair {a,b}, or -1 if absent.
  int link_index(int a, int b) const;
  // (neighbor pop id, link index), sorted by neighbor id ascending.
  const std::vector<std::pair<int, int>>& neighbors(int pop) const;

  int free_slots(int pop) const;
  double residual_bandwidth(int link_index) const;
  int total_slots() const { return total_slots_; }
  int total_used_slots() const;

  // Applies the delta atomically; throws InsufficientResources and leaves
  // the network untouched if any slot or bandwidth entry would go negative.
  void allocate(const ResourceDelta& delta);
  // Inverse of allocate. Throws InvalidRelease if the delta returns more
  // than is currently allocated; no partial effect on failure.
  void release(const ResourceDelta& delta);

 private:
  std::vector<PopNode> pops_;
  std::vector<PhysLink> links_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  int total_slots_ = 0;
};

double link_metric(const PhysLink& l, PathMetric metric);
// Sum of bandwidth_price over the path's links (0 for single-node paths).
double path_cost(const PhysicalNetwork& net, const Path& path);
// Builds a Path from a pop sequence, recomputing delay and bottleneck.
Path make_path(const PhysicalNetwork& net, std::vector<int> pops);

// Dijkstra. Ties between equal-length paths resolve to the lexicographically
// smallest pop-id sequence, so reruns and independent implementations agree.
// Throws NoPath when src and dst are disconnected.
Path shortest_path(const PhysicalNetwork& net, int src, int dst,
                   PathMetric metric);

// Yen's algorithm over the Cost metric: up to k loop-free paths in
// nondecreasing cost order, ties broken lexicographically. Returns fewer
// than k when the graph has fewer simple paths.
std::vector<Path> k_cheapest_paths(const PhysicalNetwork& net, int src,
                                   int dst, int k);

// shortest_path restricted to links accepted by the predicate (e.g. links
// with enough residual bandwidth). Empty pops when no admissible path.
std::vector<int> filtered_shortest_path(const PhysicalNetwork& net, int src,
                                        int dst, PathMetric metric,
                                        const std::function<bool(int)>& link_ok);

struct TopologyParams {
  int n_pops = 25;
  std::pair<int, int> slot_range{50, 100};
  std::pair<double, double> delay_range_ms{10.0, 50.0};
  double link_bandwidth_mbps = 10000.0;
  // Extra links are added on top of a random spanning tree until the mean
  // node degree reaches this value.
  double avg_degree = 3.0;
  // Per-PoP micro price, drawn uniformly (regional price spread).
  std::pair<double, double> instance_price_range{0.0116, 0.0232};
  // Link price is proportional to propagation delay:
  // bandwidth_price = bandwidth_price_per_ms * delay_ms. The default keeps
  // bandwidth spend small against the 0.1/h per-instance margin, so profit
  // tracks the admission count rather than path lengths.
  double bandwidth_price_per_ms = 1e-6;
};

// Connected random topology; identical seed and params give an identical
// network object, byte for byte once serialized.
PhysicalNetwork generate_topology(std::uint64_t seed, const TopologyParams& params);

}  // namespace sfcaas
