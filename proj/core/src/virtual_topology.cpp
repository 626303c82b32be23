#include "sfcaas/virtual_topology.hpp"

#include <algorithm>
#include <cmath>

#include "sfcaas/errors.hpp"

namespace sfcaas {

int VirtualTopology::link_between(int i, int j) const {
  if (i < 0 || i >= static_cast<int>(links_by_instance.size())) return -1;
  for (int li : links_by_instance[i])
    if (links[li].i == i && links[li].j == j) return li;
  return -1;
}

void VirtualTopology::rebuild_index() {
  links_by_instance.assign(instances.size(), {});
  for (const VirtualLink& l : links) {
    links_by_instance[l.i].push_back(l.id);
    links_by_instance[l.j].push_back(l.id);
  }
}

VirtualTopology translate(const SfcRequest& request, const Catalog& catalog) {
  if (request.chain.empty()) throw InvalidConfig("request has an empty chain");
  if (request.sources.empty()) throw InvalidConfig("request has no sources");
  if (request.demand_pps <= 0) throw InvalidConfig("request demand must be positive");

  VirtualTopology vt;
  vt.request_id = request.id;
  vt.demand_pps = request.demand_pps;
  vt.delay_budget_ms = request.delay_budget_ms;

  // Sources first, then the chain stages, destination last. Ids follow this
  // order so the layout is reproducible from the request alone.
  std::vector<int> source_stage;
  for (int pop : request.sources) {
    VnfInstance inst;
    inst.id = static_cast<int>(vt.instances.size());
    inst.role = InstanceRole::Source;
    inst.pinned_pop = pop;
    inst.slots = 0;
    source_stage.push_back(inst.id);
    vt.instances.push_back(inst);
  }
  vt.stages.push_back(source_stage);

  for (int vnf_id : request.chain) {
    const VnfType& v = catalog.vnf(vnf_id);
    if (v.capacity_pps_on_micro <= 0)
      throw ZeroCapacity("vnf " + v.name + " has non-positive capacity");
    int count = static_cast<int>(std::ceil(request.demand_pps / v.capacity_pps_on_micro));
    std::vector<int> stage;
    for (int k = 0; k < count; ++k) {
      VnfInstance inst;
      inst.id = static_cast<int>(vt.instances.size());
      inst.role = InstanceRole::Vnf;
      inst.vnf_type = vnf_id;
      inst.slots = 1;
      stage.push_back(inst.id);
      vt.instances.push_back(inst);
    }
    vt.stages.push_back(stage);
  }

  VnfInstance dest;
  dest.id = static_cast<int>(vt.instances.size());
  dest.role = InstanceRole::Destination;
  dest.pinned_pop = request.destination;
  dest.slots = 0;
  vt.instances.push_back(dest);
  vt.stages.push_back({dest.id});

  double total_mbps = request_bandwidth_mbps(request);

  // Complete bipartite wiring between adjacent stages; the aggregate demand
  // splits equally over the stage-pair links so every cut carries exactly
  // the request bandwidth.
  for (std::size_t s = 0; s + 1 < vt.stages.size(); ++s) {
    const std::vector<int>& from = vt.stages[s];
    const std::vector<int>& to = vt.stages[s + 1];
    double per_link = total_mbps / (static_cast<double>(from.size()) *
                                    static_cast<double>(to.size()));
    for (int i : from)
      for (int j : to) {
        VirtualLink l;
        l.id = static_cast<int>(vt.links.size());
        l.i = i;
        l.j = j;
        l.bandwidth_mbps = per_link;
        l.is_sync = false;
        vt.links.push_back(l);
      }
  }

  // Sync links between same-type instances of one stage: a ring in id order
  // (a single link for a pair), or a full clique when configured.
  for (std::size_t s = 1; s + 1 < vt.stages.size(); ++s) {
    const std::vector<int>& stage = vt.stages[s];
    if (stage.size() < 2) continue;
    const VnfType& v = catalog.vnf(vt.instances[stage[0]].vnf_type);
    if (!v.sync_required) continue;
    auto add_sync = [&](int i, int j) {
      VirtualLink l;
      l.id = static_cast<int>(vt.links.size());
      l.i = i;
      l.j = j;
      l.bandwidth_mbps = v.sync_bandwidth_mbps;
      l.is_sync = true;
      vt.links.push_back(l);
    };
    if (catalog.sync_topology == SyncTopology::Clique) {
      for (std::size_t a = 0; a < stage.size(); ++a)
        for (std::size_t b = a + 1; b < stage.size(); ++b)
          add_sync(stage[a], stage[b]);
    } else if (stage.size() == 2) {
      add_sync(stage[0], stage[1]);
    } else {
      for (std::size_t a = 0; a < stage.size(); ++a)
        add_sync(stage[a], stage[(a + 1) % stage.size()]);
    }
  }

  vt.rebuild_index();
  return vt;
}

int count_slots(const VirtualTopology& vt) {
  int slots = 0;
  for (const VnfInstance& inst : vt.instances) slots += inst.slots;
  return slots;
}

BandwidthTotals total_bandwidth(const VirtualTopology& vt) {
  BandwidthTotals t;
  for (const VirtualLink& l : vt.links)
    (l.is_sync ? t.sync_mbps : t.data_mbps) += l.bandwidth_mbps;
  return t;
}

}  // namespace sfcaas
