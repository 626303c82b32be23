#include "sfcaas/heuristics.hpp"

#include <algorithm>

#include "sfcaas/errors.hpp"

namespace sfcaas {

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::NoSlot: return "no_slot";
    case RejectReason::NoBandwidth: return "no_bandwidth";
    case RejectReason::DelayExceeded: return "delay_exceeded";
    case RejectReason::SubchainUnembeddable: return "subchain_unembeddable";
    case RejectReason::LinkUnroutable: return "link_unroutable";
    case RejectReason::SyncUnroutable: return "sync_unroutable";
    case RejectReason::Unprofitable: return "unprofitable";
  }
  return "unknown";
}

const Path& PathCache::delay_path(int src, int dst) {
  auto key = std::make_pair(src, dst);
  auto it = delay_.find(key);
  if (it == delay_.end())
    it = delay_.emplace(key, shortest_path(net_, src, dst, PathMetric::Delay)).first;
  return it->second;
}

const std::vector<Path>& PathCache::cheap_paths(int src, int dst, int k) {
  auto key = std::make_tuple(src, dst, k);
  auto it = cheap_.find(key);
  if (it == cheap_.end())
    it = cheap_.emplace(key, k_cheapest_paths(net_, src, dst, k)).first;
  return it->second;
}

EmbedState::EmbedState(const PhysicalNetwork& net, const VirtualTopology& vt) {
  placement.assign(vt.instances.size(), -1);
  routes.assign(vt.links.size(), {});
  slots_free.resize(net.pop_count());
  for (int p = 0; p < net.pop_count(); ++p) slots_free[p] = net.free_slots(p);
  bw_free_units.resize(net.links().size());
  for (std::size_t e = 0; e < net.links().size(); ++e)
    bw_free_units[e] = bw::units(net.residual_bandwidth(static_cast<int>(e)));
  for (const VnfInstance& inst : vt.instances)
    if (inst.pinned_pop) placement[inst.id] = *inst.pinned_pop;
}

std::vector<Subchain> decompose(const VirtualTopology& vt) {
  const auto& stages = vt.stages;
  if (stages.size() < 2 || stages.front().empty() || stages.back().empty())
    throw InvalidConfig("virtual topology lacks endpoint stages");
  std::size_t count = stages.front().size();
  for (std::size_t s = 1; s + 1 < stages.size(); ++s)
    count = std::max(count, stages[s].size());

  std::vector<Subchain> out;
  for (std::size_t k = 0; k < count; ++k) {
    Subchain sc;
    sc.index = static_cast<int>(k);
    sc.instances.push_back(stages.front()[k % stages.front().size()]);
    for (std::size_t s = 1; s + 1 < stages.size(); ++s)
      sc.instances.push_back(stages[s][k % stages[s].size()]);
    sc.instances.push_back(stages.back().front());
    out.push_back(std::move(sc));
  }
  return out;
}

namespace {

double delay_tol(double budget) { return 1e-9 * (1.0 + budget); }

// Consumes `need` units on every hop of pops; undoes everything and returns
// false if any hop falls short.
bool try_take_route(const PhysicalNetwork& net, EmbedState& st,
                    const std::vector<int>& pops, std::int64_t need) {
  for (std::size_t h = 0; h + 1 < pops.size(); ++h) {
    int e = net.link_index(pops[h], pops[h + 1]);
    if (e < 0 || st.bw_free_units[e] < need) {
      for (std::size_t g = h; g > 0; --g)
        st.bw_free_units[net.link_index(pops[g - 1], pops[g])] += need;
      return false;
    }
    st.bw_free_units[e] -= need;
  }
  return true;
}

void give_route(const PhysicalNetwork& net, EmbedState& st,
                const std::vector<int>& pops, std::int64_t need) {
  for (std::size_t h = 0; h + 1 < pops.size(); ++h)
    st.bw_free_units[net.link_index(pops[h], pops[h + 1])] += need;
}

// Cheapest route between two pops over links with `need` spare units.
std::optional<std::vector<int>> cheapest_feasible(const PhysicalNetwork& net,
                                                  const EmbedState& st, int a,
                                                  int b, std::int64_t need) {
  std::vector<int> pops = filtered_shortest_path(
      net, a, b, PathMetric::Cost,
      [&](int li) { return st.bw_free_units[li] >= need; });
  if (pops.empty()) return std::nullopt;
  return pops;
}

// Routes virtual link li between its endpoints' current hosts, consuming
// bandwidth from the scratch state.
bool route_link_cheapest(const PhysicalNetwork& net, EmbedState& st,
                         const VirtualTopology& vt, int li) {
  const VirtualLink& l = vt.links[li];
  std::int64_t need = bw::units(l.bandwidth_mbps);
  auto pops = cheapest_feasible(net, st, st.placement[l.i], st.placement[l.j], need);
  if (!pops) return false;
  if (!try_take_route(net, st, *pops, need)) return false;
  st.routes[li] = std::move(*pops);
  return true;
}

struct BaselineRun {
  const PhysicalNetwork& net;
  const VirtualTopology& vt;
  EmbedState& st;
  PathCache& cache;
  int dest_pop;
  std::vector<char> visited;
  RejectReason fail = RejectReason::None;

  BaselineRun(const PhysicalNetwork& n, const VirtualTopology& v, EmbedState& s,
              PathCache& c, int dest)
      : net(n), vt(v), st(s), cache(c), dest_pop(dest),
        visited(v.instances.size(), 0) {}

  // Places j on the first node of the delay-shortest path host(i)->dest that
  // has a slot and whose prefix still carries the link bandwidth, and routes
  // (i,j) along that prefix.
  bool place_fresh(int host, int li, int j) {
    const Path& p = cache.delay_path(host, dest_pop);
    std::int64_t need = bw::units(vt.links[li].bandwidth_mbps);
    bool bw_blocked = false;
    for (std::size_t idx = 0; idx < p.pops.size(); ++idx) {
      if (idx > 0) {
        int e = net.link_index(p.pops[idx - 1], p.pops[idx]);
        if (st.bw_free_units[e] < need) {
          bw_blocked = true;
          break;
        }
      }
      int m = p.pops[idx];
      if (st.slots_free[m] < vt.instances[j].slots) continue;
      st.placement[j] = m;
      st.slots_free[m] -= vt.instances[j].slots;
      std::vector<int> route(p.pops.begin(), p.pops.begin() + idx + 1);
      for (std::size_t h = 0; h + 1 < route.size(); ++h)
        st.bw_free_units[net.link_index(route[h], route[h + 1])] -= need;
      st.routes[li] = std::move(route);
      return true;
    }
    fail = bw_blocked ? RejectReason::NoBandwidth : RejectReason::NoSlot;
    return false;
  }

  // Link between two already-placed instances: the delay-shortest path
  // between the hosts, provided it still has the bandwidth.
  bool route_existing(int li) {
    const VirtualLink& l = vt.links[li];
    int a = st.placement[l.i];
    int b = st.placement[l.j];
    if (a == b) {
      st.routes[li] = {a};
      return true;
    }
    const Path& p = cache.delay_path(a, b);
    std::int64_t need = bw::units(l.bandwidth_mbps);
    if (!try_take_route(net, st, p.pops, need)) {
      fail = RejectReason::NoBandwidth;
      return false;
    }
    st.routes[li] = p.pops;
    return true;
  }

  bool embed_neighbors(int i) {
    visited[i] = 1;
    for (int li : vt.links_by_instance[i]) {
      const VirtualLink& l = vt.links[li];
      if (l.is_sync) continue;
      int j = l.i == i ? l.j : l.i;
      if (st.placement[j] == -1) {
        if (!place_fresh(st.placement[i], li, j)) return false;
      } else if (st.routes[li].empty()) {
        if (!route_existing(li)) return false;
      }
    }
    for (int li : vt.links_by_instance[i]) {
      const VirtualLink& l = vt.links[li];
      if (l.is_sync) continue;
      int j = l.i == i ? l.j : l.i;
      if (!visited[j] && !embed_neighbors(j)) return false;
    }
    return true;
  }
};

void optimize_state(const PhysicalNetwork& net, const Catalog& catalog,
                    const VirtualTopology& vt, EmbedState& st,
                    double delay_budget_ms) {
  auto total_cost = [&]() {
    Embedding e;
    e.placement = st.placement;
    e.routes = st.routes;
    return evaluate_cost(net, vt, e, catalog).total;
  };
  double best = total_cost();

  for (const VnfInstance& inst : vt.instances) {
    if (inst.endpoint()) continue;
    int home = st.placement[inst.id];
    for (auto [m, unused] : net.neighbors(home)) {
      int cur = st.placement[inst.id];
      if (m == cur || st.slots_free[m] < inst.slots) continue;

      auto slots_snap = st.slots_free;
      auto bw_snap = st.bw_free_units;
      std::vector<std::pair<int, std::vector<int>>> route_snap;
      for (int li : vt.links_by_instance[inst.id])
        route_snap.push_back({li, st.routes[li]});

      st.slots_free[cur] += inst.slots;
      st.slots_free[m] -= inst.slots;
      st.placement[inst.id] = m;
      bool ok = true;
      for (int li : vt.links_by_instance[inst.id]) {
        give_route(net, st, st.routes[li],
                   bw::units(vt.links[li].bandwidth_mbps));
        st.routes[li].clear();
      }
      for (int li : vt.links_by_instance[inst.id])
        if (!route_link_cheapest(net, st, vt, li)) {
          ok = false;
          break;
        }
      if (ok) {
        Embedding e;
        e.placement = st.placement;
        e.routes = st.routes;
        double cost = evaluate_cost(net, vt, e, catalog).total;
        double delay = routed_end_to_end_delay(net, vt, e);
        if (cost < best && delay <= delay_budget_ms + delay_tol(delay_budget_ms)) {
          best = cost;
          continue;  // migration committed
        }
      }
      st.slots_free = std::move(slots_snap);
      st.bw_free_units = std::move(bw_snap);
      st.placement[inst.id] = cur;
      for (auto& [li, route] : route_snap) st.routes[li] = std::move(route);
    }
  }
}

EmbedOutcome finish(const PhysicalNetwork& net, const Catalog& catalog,
                    const VirtualTopology& vt, EmbedState& st) {
  EmbedOutcome out;
  out.accepted = true;
  out.embedding.placement = st.placement;
  out.embedding.routes = st.routes;
  out.embedding.cost = evaluate_cost(net, vt, out.embedding, catalog);
  return out;
}

}  // namespace

bool embed_sync_links(const PhysicalNetwork& net, EmbedState& st,
                      const VirtualTopology& vt) {
  for (const VirtualLink& l : vt.links) {
    if (!l.is_sync || !st.routes[l.id].empty()) continue;
    if (!route_link_cheapest(net, st, vt, l.id)) return false;
  }
  return true;
}

bool embed_subchain(const PhysicalNetwork& net, EmbedState& st,
                    const VirtualTopology& vt, const Subchain& sc,
                    double delay_budget_ms, int k_paths, PathCache* cache) {
  PathCache local(net);
  PathCache& paths = cache ? *cache : local;

  int src_pop = st.placement[sc.instances.front()];
  int dst_pop = st.placement[sc.instances.back()];
  if (src_pop < 0 || dst_pop < 0)
    throw InvalidConfig("subchain endpoints must be placed before embedding");

  std::vector<int> fresh;
  for (int inst : sc.instances)
    if (st.placement[inst] == -1) fresh.push_back(inst);

  struct Seg {
    int li;
    std::int64_t need;
  };
  std::vector<Seg> segs;
  std::int64_t max_need = 0;
  for (std::size_t h = 0; h + 1 < sc.instances.size(); ++h) {
    int li = vt.link_between(sc.instances[h], sc.instances[h + 1]);
    if (li < 0) throw InvalidConfig("subchain instances are not adjacent in the topology");
    if (!st.routes[li].empty()) continue;
    std::int64_t need = bw::units(vt.links[li].bandwidth_mbps);
    segs.push_back({li, need});
    max_need = std::max(max_need, need);
  }
  if (fresh.empty() && segs.empty()) return true;

  for (const Path& P : paths.cheap_paths(src_pop, dst_pop, k_paths)) {
    if (P.total_delay_ms > delay_budget_ms + delay_tol(delay_budget_ms)) continue;
    long free_total = 0;
    for (int m : P.pops) free_total += st.slots_free[m];
    if (free_total < static_cast<long>(fresh.size())) continue;
    bool edges_ok = true;
    for (std::size_t h = 0; h + 1 < P.pops.size(); ++h)
      if (st.bw_free_units[net.link_index(P.pops[h], P.pops[h + 1])] < max_need) {
        edges_ok = false;
        break;
      }
    if (!edges_ok) continue;

    // Tentatively pack and route on this path; fall through to the next
    // candidate when a shared off-path instance blocks a segment.
    auto slots_snap = st.slots_free;
    auto bw_snap = st.bw_free_units;
    std::vector<int> placed;
    std::vector<int> routed;
    auto rollback = [&]() {
      st.slots_free = slots_snap;
      st.bw_free_units = bw_snap;
      for (int inst : placed) st.placement[inst] = -1;
      for (int li : routed) st.routes[li].clear();
    };

    bool ok = true;
    std::size_t pos = 0;
    for (int inst : fresh) {
      while (pos < P.pops.size() && st.slots_free[P.pops[pos]] < vt.instances[inst].slots)
        ++pos;
      if (pos == P.pops.size()) {
        ok = false;
        break;
      }
      st.placement[inst] = P.pops[pos];
      st.slots_free[P.pops[pos]] -= vt.instances[inst].slots;
      placed.push_back(inst);
    }

    auto pos_of = [&](int pop) {
      for (std::size_t i = 0; i < P.pops.size(); ++i)
        if (P.pops[i] == pop) return static_cast<int>(i);
      return -1;
    };

    if (ok) {
      for (const Seg& s : segs) {
        const VirtualLink& l = vt.links[s.li];
        int mu = st.placement[l.i];
        int mv = st.placement[l.j];
        int a = pos_of(mu);
        int b = pos_of(mv);
        std::vector<int> route;
        if (a >= 0 && b >= 0) {
          if (a <= b)
            route.assign(P.pops.begin() + a, P.pops.begin() + b + 1);
          else
            route.assign(P.pops.rbegin() + (P.pops.size() - 1 - a),
                         P.pops.rbegin() + (P.pops.size() - b));
          if (!try_take_route(net, st, route, s.need)) {
            ok = false;
            break;
          }
        } else {
          auto r = cheapest_feasible(net, st, mu, mv, s.need);
          if (!r || !try_take_route(net, st, *r, s.need)) {
            ok = false;
            break;
          }
          route = std::move(*r);
        }
        st.routes[s.li] = std::move(route);
        routed.push_back(s.li);
      }
    }
    if (ok) return true;
    rollback();
  }
  return false;
}

EmbedOutcome baseline_embed(const PhysicalNetwork& net, const Catalog& catalog,
                            const VirtualTopology& vt, double delay_budget_ms,
                            PathCache* cache) {
  PathCache local(net);
  PathCache& paths = cache ? *cache : local;

  EmbedState st(net, vt);
  int dest_pop = st.placement[vt.stages.back().front()];
  if (dest_pop < 0) throw UnpinnedEndpoint("destination must be pinned");

  BaselineRun run(net, vt, st, paths, dest_pop);
  for (int s : vt.stages.front()) {
    if (st.placement[s] < 0) throw UnpinnedEndpoint("sources must be pinned");
    if (!run.visited[s] && !run.embed_neighbors(s))
      return EmbedOutcome::reject(run.fail);
  }
  for (const VnfInstance& inst : vt.instances)
    if (st.placement[inst.id] == -1)
      throw Error("baseline walk left an instance unplaced");

  if (!embed_sync_links(net, st, vt))
    return EmbedOutcome::reject(RejectReason::NoBandwidth);

  Embedding e;
  e.placement = st.placement;
  e.routes = st.routes;
  if (routed_end_to_end_delay(net, vt, e) >
      delay_budget_ms + delay_tol(delay_budget_ms))
    return EmbedOutcome::reject(RejectReason::DelayExceeded);

  return finish(net, catalog, vt, st);
}

EmbedOutcome spin_embed(const PhysicalNetwork& net, const Catalog& catalog,
                        const VirtualTopology& vt, double delay_budget_ms,
                        int k_paths, PathCache* cache) {
  PathCache local(net);
  PathCache& paths = cache ? *cache : local;

  for (const VnfInstance& inst : vt.instances)
    if (inst.endpoint() && !inst.pinned_pop)
      throw UnpinnedEndpoint("instance " + std::to_string(inst.id) +
                             " must be pinned");

  EmbedState st(net, vt);
  for (const Subchain& sc : decompose(vt))
    if (!embed_subchain(net, st, vt, sc, delay_budget_ms, k_paths, &paths))
      return EmbedOutcome::reject(RejectReason::SubchainUnembeddable);

  // The subchains cover one strand per stage; the rest of the bipartite
  // wiring still needs routes.
  for (const VirtualLink& l : vt.links) {
    if (l.is_sync || !st.routes[l.id].empty()) continue;
    if (!route_link_cheapest(net, st, vt, l.id))
      return EmbedOutcome::reject(RejectReason::LinkUnroutable);
  }
  if (!embed_sync_links(net, st, vt))
    return EmbedOutcome::reject(RejectReason::SyncUnroutable);

  Embedding e;
  e.placement = st.placement;
  e.routes = st.routes;
  if (routed_end_to_end_delay(net, vt, e) >
      delay_budget_ms + delay_tol(delay_budget_ms))
    return EmbedOutcome::reject(RejectReason::DelayExceeded);

  optimize_state(net, catalog, vt, st, delay_budget_ms);
  return finish(net, catalog, vt, st);
}

Embedding optimize(const PhysicalNetwork& net, const Catalog& catalog,
                   const VirtualTopology& vt, const Embedding& emb,
                   double delay_budget_ms) {
  EmbedState st(net, vt);
  st.placement = emb.placement;
  st.routes = emb.routes;
  ResourceDelta used = resource_delta(net, vt, emb);
  for (const auto& [pop, slots] : used.slots_by_pop) {
    st.slots_free[pop] -= slots;
    if (st.slots_free[pop] < 0)
      throw InvalidEmbedding("embedding uses more slots than the network has");
  }
  for (const auto& [li, units] : used.bandwidth_units_by_link) {
    st.bw_free_units[li] -= units;
    if (st.bw_free_units[li] < 0)
      throw InvalidEmbedding("embedding uses more bandwidth than the network has");
  }
  optimize_state(net, catalog, vt, st, delay_budget_ms);
  Embedding out;
  out.placement = st.placement;
  out.routes = st.routes;
  out.cost = evaluate_cost(net, vt, out, catalog);
  return out;
}

}  // namespace sfcaas
