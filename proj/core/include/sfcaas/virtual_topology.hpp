#pragma once

#include <optional>
#include <vector>

#include "sfcaas/catalog.hpp"
#include "sfcaas/request.hpp"

namespace sfcaas {

enum class InstanceRole { Vnf, Source, Destination };

// One micro instance of a VNF, or an endpoint pseudo-instance. Endpoints are
// pinned to their PoP and consume no slots.
struct VnfInstance {
  int id = 0;
  InstanceRole role = InstanceRole::Vnf;
  int vnf_type = -1;                // valid for role == Vnf
  std::optional<int> pinned_pop;    // set for endpoints
  int slots = 1;

  bool endpoint() const { return role != InstanceRole::Vnf; }
};

// Directed virtual link from instance i to instance j. Sync links connect
// same-type instances inside one stage; data links connect adjacent stages.
struct VirtualLink {
  int id = 0;
  int i = 0;
  int j = 0;
  double bandwidth_mbps = 0.0;
  bool is_sync = false;
};

struct VirtualTopology {
  std::vector<VnfInstance> instances;
  std::vector<VirtualLink> links;
  // stages.front() = source pseudo-instances, stages.back() = destination,
  // the stages between hold the scaled-out VNF instances in chain order.
  std::vector<std::vector<int>> stages;

  int request_id = -1;
  double demand_pps = 0.0;
  double delay_budget_ms = 0.0;

  // Links incident to each instance, ascending link id.
  std::vector<std::vector<int>> links_by_instance;
  // Link id for the ordered pair (i, j), or -1.
  int link_between(int i, int j) const;

  void rebuild_index();
};

// Sizes each chain stage as ceil(demand / capacity-on-micro), wires adjacent
// stages completely with the demand bandwidth split equally over the
// stage-pair links, and adds sync links (ring by default, clique via the
// catalog's sync_topology) between same-type instances of a stage.
VirtualTopology translate(const SfcRequest& request, const Catalog& catalog);

// Slots the topology needs in total; endpoints count zero.
int count_slots(const VirtualTopology& vt);

struct BandwidthTotals {
  double data_mbps = 0.0;
  double sync_mbps = 0.0;
};
BandwidthTotals total_bandwidth(const VirtualTopology& vt);

}  // namespace sfcaas
