#include <doctest.h>

#include <cmath>
#include <set>

#include "sfcaas/catalog.hpp"
#include "sfcaas/net_model.hpp"
#include "sfcaas/request.hpp"
#include "sfcaas/rng.hpp"
#include "sfcaas/virtual_topology.hpp"

using namespace sfcaas;

namespace {

Catalog fw_ids_catalog(bool sync) {
  std::vector<VnfType> types{
      {0, "firewall", 10000.0, sync, sync ? 1.0 : 0.0, sync ? 0.01 : 0.0, 1.0},
      {1, "ids", 13000.0, sync, sync ? 1.0 : 0.0, sync ? 0.02 : 0.0, 1.0},
  };
  std::vector<Flavor> flavors{{"micro", 1, 1.0, 0.0125, 1, 1.0}};
  return Catalog(std::move(types), std::move(flavors), CostModel{});
}

SfcRequest basic_request(std::vector<int> chain, double demand,
                         std::vector<int> sources = {0}, int dest = 1) {
  SfcRequest r;
  r.id = 1;
  r.chain = std::move(chain);
  r.sources = std::move(sources);
  r.destination = dest;
  r.demand_pps = demand;
  r.delay_budget_ms = 100.0;
  return r;
}

int data_links_between(const VirtualTopology& vt, std::size_t stage_a, std::size_t stage_b) {
  int count = 0;
  for (const VirtualLink& l : vt.links) {
    if (l.is_sync) continue;
    bool a_in = false, b_in = false;
    for (int id : vt.stages[stage_a]) a_in = a_in || id == l.i;
    for (int id : vt.stages[stage_b]) b_in = b_in || id == l.j;
    if (a_in && b_in) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("instance count is the ceiling of demand over capacity") {
  Catalog c = fw_ids_catalog(false);
  VirtualTopology vt = translate(basic_request({0}, 25000.0), c);
  REQUIRE(vt.stages.size() == 3);  // sources, firewall stage, destination
  CHECK(vt.stages[1].size() == 3);  // ceil(25000/10000)
  CHECK(count_slots(vt) == 3);
}

TEST_CASE("light demand gives one instance per stage and no sync links") {
  Catalog c = fw_ids_catalog(true);
  VirtualTopology vt = translate(basic_request({0, 1}, 9000.0), c);
  CHECK(vt.stages[1].size() == 1);
  CHECK(vt.stages[2].size() == 1);
  for (const VirtualLink& l : vt.links) CHECK(!l.is_sync);
  CHECK(count_slots(vt) == 2);
}

TEST_CASE("two-stage sizing with sync rings") {
  Catalog c = fw_ids_catalog(true);
  VirtualTopology vt = translate(basic_request({0, 1}, 20000.0), c);
  REQUIRE(vt.stages.size() == 4);
  CHECK(vt.stages[1].size() == 2);  // ceil(20000/10000)
  CHECK(vt.stages[2].size() == 2);  // ceil(20000/13000)
  CHECK(count_slots(vt) == 4);
  CHECK(data_links_between(vt, 1, 2) == 4);  // complete bipartite 2x2

  // one sync link per two-instance stage
  int sync_in_fw = 0, sync_in_ids = 0;
  for (const VirtualLink& l : vt.links) {
    if (!l.is_sync) continue;
    std::set<int> fw(vt.stages[1].begin(), vt.stages[1].end());
    std::set<int> ids(vt.stages[2].begin(), vt.stages[2].end());
    if (fw.count(l.i) && fw.count(l.j)) ++sync_in_fw;
    if (ids.count(l.i) && ids.count(l.j)) ++sync_in_ids;
    // sync links never cross stages
    CHECK((fw.count(l.i) > 0) == (fw.count(l.j) > 0));
  }
  CHECK(sync_in_fw == 1);
  CHECK(sync_in_ids == 1);
}

TEST_CASE("endpoint pseudo-instances are pinned and free") {
  Catalog c = fw_ids_catalog(false);
  VirtualTopology vt = translate(basic_request({0}, 5000.0, {0, 2}, 1), c);
  REQUIRE(vt.stages.front().size() == 2);
  REQUIRE(vt.stages.back().size() == 1);
  for (int id : vt.stages.front()) {
    CHECK(vt.instances[id].role == InstanceRole::Source);
    CHECK(vt.instances[id].slots == 0);
    REQUIRE(vt.instances[id].pinned_pop.has_value());
  }
  CHECK(vt.instances[vt.stages.front()[0]].pinned_pop == 0);
  CHECK(vt.instances[vt.stages.front()[1]].pinned_pop == 2);
  CHECK(vt.instances[vt.stages.back()[0]].pinned_pop == 1);
  CHECK(vt.instances[vt.stages.back()[0]].slots == 0);
}

TEST_CASE("empty-chain topology has zero slots") {
  VirtualTopology vt;
  vt.instances.push_back({0, InstanceRole::Source, -1, 0, 0});
  vt.instances.push_back({1, InstanceRole::Destination, -1, 1, 0});
  vt.stages = {{0}, {1}};
  CHECK(count_slots(vt) == 0);
}

TEST_CASE("translation properties over random requests") {
  TopologyParams tp;
  PhysicalNetwork net = generate_topology(21, tp);
  Catalog catalog = default_catalog(21);
  WorkloadParams params;
  params.horizon_s = 10000.0;
  auto reqs = generate_workload(21, net, catalog, params);
  REQUIRE(reqs.size() > 100);

  for (const SfcRequest& r : reqs) {
    VirtualTopology vt = translate(r, catalog);
    double total_bw = request_bandwidth_mbps(r);

    REQUIRE(vt.stages.size() == r.chain.size() + 2);
    for (std::size_t s = 1; s + 1 < vt.stages.size(); ++s) {
      // ceil sizing: enough capacity, but no instance to spare
      double cap = catalog.vnf(r.chain[s - 1]).capacity_pps_on_micro;
      auto n_v = static_cast<double>(vt.stages[s].size());
      CHECK(n_v * cap >= r.demand_pps);
      CHECK((n_v - 1) * cap < r.demand_pps);
    }

    // each inter-stage cut carries exactly the request bandwidth
    for (std::size_t s = 0; s + 1 < vt.stages.size(); ++s) {
      double cut = 0.0;
      std::set<int> from(vt.stages[s].begin(), vt.stages[s].end());
      std::set<int> to(vt.stages[s + 1].begin(), vt.stages[s + 1].end());
      int links_in_cut = 0;
      for (const VirtualLink& l : vt.links) {
        if (l.is_sync) continue;
        if (from.count(l.i) && to.count(l.j)) {
          cut += l.bandwidth_mbps;
          ++links_in_cut;
        }
      }
      CHECK(links_in_cut == static_cast<int>(from.size() * to.size()));
      CHECK(std::abs(cut - total_bw) <= 1e-9 * total_bw);
    }

    // sync links exist iff the stage has two or more instances of a
    // sync-requiring type, and stay inside their stage
    for (std::size_t s = 1; s + 1 < vt.stages.size(); ++s) {
      std::set<int> stage(vt.stages[s].begin(), vt.stages[s].end());
      int sync_count = 0;
      for (const VirtualLink& l : vt.links)
        if (l.is_sync && stage.count(l.i)) {
          CHECK(stage.count(l.j) == 1);
          ++sync_count;
        }
      const VnfType& v = catalog.vnf(r.chain[s - 1]);
      std::size_t size = vt.stages[s].size();
      int expect = 0;
      if (v.sync_required && size >= 2)
        expect = size == 2 ? 1 : static_cast<int>(size);  // ring
      CHECK(sync_count == expect);
    }
  }
}

TEST_CASE("translate is deterministic") {
  Catalog c = fw_ids_catalog(true);
  SfcRequest r = basic_request({0, 1}, 33000.0, {0, 2}, 1);
  VirtualTopology a = translate(r, c);
  VirtualTopology b = translate(r, c);
  REQUIRE(a.instances.size() == b.instances.size());
  REQUIRE(a.links.size() == b.links.size());
  for (std::size_t i = 0; i < a.links.size(); ++i) {
    CHECK(a.links[i].i == b.links[i].i);
    CHECK(a.links[i].j == b.links[i].j);
    CHECK(a.links[i].bandwidth_mbps == b.links[i].bandwidth_mbps);
  }
}

TEST_CASE("clique sync topology connects all pairs") {
  Catalog c = fw_ids_catalog(true);
  c.sync_topology = SyncTopology::Clique;
  VirtualTopology vt = translate(basic_request({0}, 35000.0), c);  // 4 instances
  REQUIRE(vt.stages[1].size() == 4);
  int sync = 0;
  for (const VirtualLink& l : vt.links) sync += l.is_sync ? 1 : 0;
  CHECK(sync == 6);  // 4 choose 2
}
