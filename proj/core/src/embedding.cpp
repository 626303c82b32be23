#include "sfcaas/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sfcaas/errors.hpp"

namespace sfcaas {

namespace {

// Returns an error string for structural problems, empty when sound.
std::string structure_error(const PhysicalNetwork& net, const VirtualTopology& vt,
                            const Embedding& emb) {
  if (emb.placement.size() != vt.instances.size())
    return "placement covers " + std::to_string(emb.placement.size()) +
           " instances, topology has " + std::to_string(vt.instances.size());
  for (std::size_t i = 0; i < emb.placement.size(); ++i)
    if (emb.placement[i] < 0 || emb.placement[i] >= net.pop_count())
      return "instance " + std::to_string(i) + " placed at unknown pop " +
             std::to_string(emb.placement[i]);
  if (emb.routes.size() != vt.links.size())
    return "routes cover " + std::to_string(emb.routes.size()) +
           " links, topology has " + std::to_string(vt.links.size());
  for (const VirtualLink& l : vt.links) {
    const std::vector<int>& route = emb.routes[l.id];
    if (route.empty()) return "link " + std::to_string(l.id) + " has no route";
    if (route.front() != emb.placement[l.i] || route.back() != emb.placement[l.j])
      return "link " + std::to_string(l.id) + " route endpoints mismatch placement";
    for (std::size_t h = 0; h + 1 < route.size(); ++h)
      if (net.link_index(route[h], route[h + 1]) < 0)
        return "link " + std::to_string(l.id) + " route hop " + std::to_string(h) +
               " is not a physical link";
  }
  return {};
}

}  // namespace

CostBreakdown evaluate_cost(const PhysicalNetwork& net, const VirtualTopology& vt,
                            const Embedding& emb, const Catalog& catalog) {
  std::string err = structure_error(net, vt, emb);
  if (!err.empty()) throw InvalidEmbedding(err);

  CostBreakdown cb;
  for (const VnfInstance& inst : vt.instances) {
    if (inst.endpoint()) continue;
    double deploy = instance_cost(catalog, net, inst.vnf_type, emb.placement[inst.id]);
    cb.instance_cost += deploy;
    cb.revenue += deploy + catalog.cost_model().profit_margin_per_instance_hour;
  }
  for (const VirtualLink& l : vt.links) {
    const std::vector<int>& route = emb.routes[l.id];
    double carried = 0.0;
    for (std::size_t h = 0; h + 1 < route.size(); ++h) {
      int li = net.link_index(route[h], route[h + 1]);
      carried += l.bandwidth_mbps * net.link(li).bandwidth_price;
    }
    if (l.is_sync) {
      cb.sync_bandwidth_cost += carried;
      cb.flat_sync_cost += catalog.vnf(vt.instances[l.i].vnf_type).sync_rate_per_hour;
    } else {
      cb.data_bandwidth_cost += carried;
    }
  }
  cb.total = cb.instance_cost + cb.data_bandwidth_cost + cb.sync_bandwidth_cost +
             cb.flat_sync_cost;
  cb.profit = cb.revenue - cb.total;
  return cb;
}

double routed_end_to_end_delay(const PhysicalNetwork& net,
                               const VirtualTopology& vt, const Embedding& emb) {
  std::string err = structure_error(net, vt, emb);
  if (!err.empty()) throw InvalidEmbedding(err);

  auto route_delay = [&](int link_id) {
    const std::vector<int>& route = emb.routes[link_id];
    double d = 0.0;
    for (std::size_t h = 0; h + 1 < route.size(); ++h)
      d += net.link(net.link_index(route[h], route[h + 1])).propagation_delay_ms;
    return d;
  };

  // Traffic entering at a source is served along one instance sequence, so
  // the delay seen from that source is the best routed path through the stage
  // DAG. The request-level figure is the slowest source.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(vt.instances.size());
  double e2e = 0.0;
  for (int src : vt.stages.front()) {
    std::fill(best.begin(), best.end(), kInf);
    best[src] = 0.0;
    for (std::size_t s = 0; s + 1 < vt.stages.size(); ++s) {
      for (int j : vt.stages[s + 1]) {
        double v = kInf;
        for (int i : vt.stages[s]) {
          int li = vt.link_between(i, j);
          if (li < 0 || best[i] == kInf) continue;
          v = std::min(v, best[i] + route_delay(li));
        }
        best[j] = v;
      }
    }
    double d = best[vt.stages.back().front()];
    if (d == kInf) throw InvalidEmbedding("no routed path from source to destination");
    e2e = std::max(e2e, d);
  }
  return e2e;
}

std::vector<Violation> check_feasibility(const PhysicalNetwork& net,
                                         const VirtualTopology& vt,
                                         const Embedding& emb,
                                         double delay_budget_ms) {
  std::vector<Violation> out;
  std::string err = structure_error(net, vt, emb);
  if (!err.empty()) {
    // A malformed embedding breaks uniqueness or routing before anything else
    // can be judged.
    out.push_back({err.find("route") != std::string::npos ? "routing" : "uniqueness", err});
    return out;
  }

  for (const VnfInstance& inst : vt.instances)
    if (inst.pinned_pop && emb.placement[inst.id] != *inst.pinned_pop)
      out.push_back({"pin", "instance " + std::to_string(inst.id) + " pinned to pop " +
                                std::to_string(*inst.pinned_pop) + " but placed at " +
                                std::to_string(emb.placement[inst.id])});

  std::map<int, int> slots;
  for (const VnfInstance& inst : vt.instances)
    if (inst.slots > 0) slots[emb.placement[inst.id]] += inst.slots;
  for (const auto& [pop, need] : slots)
    if (need > net.free_slots(pop))
      out.push_back({"capacity", "pop " + std::to_string(pop) + " needs " +
                                     std::to_string(need) + " slots, " +
                                     std::to_string(net.free_slots(pop)) + " free"});

  std::map<int, std::int64_t> need_units;
  for (const VirtualLink& l : vt.links) {
    const std::vector<int>& route = emb.routes[l.id];
    for (std::size_t h = 0; h + 1 < route.size(); ++h)
      need_units[net.link_index(route[h], route[h + 1])] += bw::units(l.bandwidth_mbps);
  }
  for (const auto& [li, need] : need_units)
    if (need > bw::units(net.residual_bandwidth(li)))
      out.push_back({"bandwidth", "link " + std::to_string(li) + " needs " +
                                      std::to_string(bw::mbps(need)) + " Mbps, " +
                                      std::to_string(net.residual_bandwidth(li)) +
                                      " residual"});

  double delay = routed_end_to_end_delay(net, vt, emb);
  if (delay > delay_budget_ms + 1e-9 * (1.0 + delay_budget_ms))
    out.push_back({"delay", "routed delay " + std::to_string(delay) +
                                " ms exceeds budget " +
                                std::to_string(delay_budget_ms) + " ms"});
  return out;
}

ResourceDelta resource_delta(const PhysicalNetwork& net, const VirtualTopology& vt,
                             const Embedding& emb) {
  std::string err = structure_error(net, vt, emb);
  if (!err.empty()) throw InvalidEmbedding(err);
  ResourceDelta d;
  for (const VnfInstance& inst : vt.instances)
    if (inst.slots > 0) d.slots_by_pop[emb.placement[inst.id]] += inst.slots;
  for (const VirtualLink& l : vt.links) {
    const std::vector<int>& route = emb.routes[l.id];
    for (std::size_t h = 0; h + 1 < route.size(); ++h)
      d.bandwidth_units_by_link[net.link_index(route[h], route[h + 1])] +=
          bw::units(l.bandwidth_mbps);
  }
  return d;
}

}  // namespace sfcaas
