#include <algorithm>
#include <chrono>
#include <cmath>

#include "sfcaas/errors.hpp"
#include "sfcaas/ilp.hpp"

namespace sfcaas {

namespace {

struct Search {
  const IlpModel& model;
  const PhysicalNetwork& net;
  const VirtualTopology& vt;
  const SolveLimits& limits;
  double delay_budget_ms;

  std::vector<std::vector<double>> place_cost;  // [instance][pop]
  std::vector<double> min_place_suffix;         // cheapest completion from instance k on
  std::vector<std::vector<double>> pair_cost;   // all-pairs cheapest route cost
  std::vector<std::int64_t> link_units;         // per virtual link

  std::vector<int> placement;
  std::vector<int> slots_free;
  std::vector<std::int64_t> bw_free;
  std::vector<std::vector<int>> routes;
  std::vector<double> route_lb_suffix;

  double best_obj = std::numeric_limits<double>::infinity();
  Embedding best;
  bool found = false;

  long nodes = 0;
  bool aborted = false;
  std::chrono::steady_clock::time_point started;

  Search(const IlpModel& m, const SolveLimits& lim, double budget)
      : model(m), net(*m.net), vt(*m.vt), limits(lim), delay_budget_ms(budget) {
    int n_inst = model.n_instances;
    int n_pops = model.n_pops;
    place_cost.assign(n_inst, std::vector<double>(n_pops, 0.0));
    for (int i = 0; i < n_inst; ++i)
      for (int p = 0; p < n_pops; ++p)
        place_cost[i][p] = model.vars[model.x_index(i, p)].objective;

    min_place_suffix.assign(n_inst + 1, 0.0);
    for (int i = n_inst - 1; i >= 0; --i) {
      const VnfInstance& inst = vt.instances[i];
      double cheapest;
      if (inst.pinned_pop) {
        cheapest = place_cost[i][*inst.pinned_pop];
      } else {
        cheapest = *std::min_element(place_cost[i].begin(), place_cost[i].end());
      }
      min_place_suffix[i] = min_place_suffix[i + 1] + cheapest;
    }

    double inf = std::numeric_limits<double>::infinity();
    pair_cost.assign(n_pops, std::vector<double>(n_pops, inf));
    for (int p = 0; p < n_pops; ++p) pair_cost[p][p] = 0.0;
    for (const PhysLink& l : net.links()) {
      pair_cost[l.a][l.b] = std::min(pair_cost[l.a][l.b], l.bandwidth_price);
      pair_cost[l.b][l.a] = std::min(pair_cost[l.b][l.a], l.bandwidth_price);
    }
    for (int k = 0; k < n_pops; ++k)
      for (int a = 0; a < n_pops; ++a)
        for (int b = 0; b < n_pops; ++b)
          pair_cost[a][b] = std::min(pair_cost[a][b], pair_cost[a][k] + pair_cost[k][b]);

    for (const VirtualLink& l : vt.links) link_units.push_back(bw::units(l.bandwidth_mbps));

    placement.assign(n_inst, -1);
    slots_free = model.slot_rhs;
    bw_free = model.bw_rhs_units;
    routes.assign(vt.links.size(), {});
    route_lb_suffix.assign(vt.links.size() + 1, 0.0);
    started = std::chrono::steady_clock::now();
  }

  bool tick() {
    if (aborted) return false;
    if (++nodes > limits.max_nodes) {
      aborted = true;
      return false;
    }
    if (limits.time_budget_s > 0 && (nodes & 0xfff) == 0) {
      double elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started)
                           .count();
      if (elapsed > limits.time_budget_s) {
        aborted = true;
        return false;
      }
    }
    return true;
  }

  void try_complete(double obj) {
    if (delay_budget_ms >= 0) {
      Embedding emb;
      emb.placement = placement;
      emb.routes = routes;
      double delay = routed_end_to_end_delay(net, vt, emb);
      if (delay > delay_budget_ms + 1e-9 * (1.0 + delay_budget_ms)) return;
      if (obj < best_obj) {
        best_obj = obj;
        best = std::move(emb);
        found = true;
      }
      return;
    }
    if (obj < best_obj) {
      best_obj = obj;
      best.placement = placement;
      best.routes = routes;
      found = true;
    }
  }

  void route_link(std::size_t li, double obj) {
    if (aborted) return;
    if (li == vt.links.size()) {
      try_complete(obj);
      return;
    }
    const VirtualLink& l = vt.links[li];
    int target = placement[l.j];
    std::vector<char> visited(model.n_pops, 0);
    std::vector<int> path{placement[l.i]};
    visited[placement[l.i]] = 1;
    extend_route(li, obj, target, visited, path);
  }

  void extend_route(std::size_t li, double obj, int target,
                    std::vector<char>& visited, std::vector<int>& path) {
    if (!tick()) return;
    int cur = path.back();
    if (cur == target) {
      routes[li] = path;
      route_link(li + 1, obj);
      routes[li].clear();
      return;
    }
    const VirtualLink& l = vt.links[li];
    for (auto [v, e] : net.neighbors(cur)) {
      if (aborted) return;
      if (visited[v] || bw_free[e] < link_units[li]) continue;
      double step = l.bandwidth_mbps * net.links()[e].bandwidth_price;
      double bound = obj + step + l.bandwidth_mbps * pair_cost[v][target] +
                     route_lb_suffix[li + 1];
      if (bound >= best_obj) continue;
      bw_free[e] -= link_units[li];
      visited[v] = 1;
      path.push_back(v);
      extend_route(li, obj + step, target, visited, path);
      path.pop_back();
      visited[v] = 0;
      bw_free[e] += link_units[li];
    }
  }

  void place_instance(int i, double obj) {
    if (aborted) return;
    if (i == model.n_instances) {
      // Exact static routing bound per link now that hosts are known.
      for (int li = static_cast<int>(vt.links.size()) - 1; li >= 0; --li) {
        const VirtualLink& l = vt.links[li];
        route_lb_suffix[li] = route_lb_suffix[li + 1] +
                              l.bandwidth_mbps *
                                  pair_cost[placement[l.i]][placement[l.j]];
      }
      if (obj + route_lb_suffix[0] >= best_obj) return;
      route_link(0, obj);
      return;
    }
    const VnfInstance& inst = vt.instances[i];
    int first = inst.pinned_pop ? *inst.pinned_pop : 0;
    int last = inst.pinned_pop ? *inst.pinned_pop : model.n_pops - 1;
    for (int p = first; p <= last; ++p) {
      if (!tick()) return;
      if (slots_free[p] < inst.slots) continue;
      double bound = obj + place_cost[i][p] + min_place_suffix[i + 1];
      if (bound >= best_obj) continue;
      placement[i] = p;
      slots_free[p] -= inst.slots;
      place_instance(i + 1, obj + place_cost[i][p]);
      slots_free[p] += inst.slots;
      placement[i] = -1;
      if (aborted) return;
    }
  }
};

}  // namespace

SolveResult solve_exact(const IlpModel& model, const SolveLimits& limits,
                        double delay_budget_ms) {
  if (!model.solvable())
    throw InvalidConfig(
        "model lacks instance data (parsed from text?); rebuild it from the "
        "network and virtual topology");

  Search s(model, limits, delay_budget_ms);
  s.place_instance(0, 0.0);

  SolveResult r;
  r.nodes_visited = s.nodes;
  r.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - s.started)
          .count();
  if (s.aborted) {
    r.status = SolveStatus::BudgetExceeded;
    return r;
  }
  if (!s.found) {
    r.status = SolveStatus::Infeasible;
    return r;
  }
  r.status = SolveStatus::Optimal;
  Embedding emb = std::move(s.best);
  emb.cost = evaluate_cost(*model.net, *model.vt, emb, *model.catalog);
  // The search accounts costs through the model coefficients; re-derive them
  // from first principles and insist the two agree.
  double recheck = emb.cost.objective();
  if (std::fabs(recheck - s.best_obj) > 1e-9 * (1.0 + std::fabs(recheck)))
    throw Error("solver objective drifted from evaluated cost");
  r.embedding = std::move(emb);
  return r;
}

}  // namespace sfcaas
