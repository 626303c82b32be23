#include "sfcaas/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "sfcaas/errors.hpp"

namespace sfcaas {

namespace {

double tol_for(double x) { return 1e-9 * (1.0 + std::fabs(x)); }

}  // namespace

double link_metric(const PhysLink& l, PathMetric metric) {
  return metric == PathMetric::Delay ? l.propagation_delay_ms : l.bandwidth_price;
}

PhysicalNetwork::PhysicalNetwork(std::vector<PopNode> pops,
                                 std::vector<PhysLink> links)
    : pops_(std::move(pops)), links_(std::move(links)) {
  int n = static_cast<int>(pops_.size());
  if (n == 0) throw InvalidConfig("network needs at least one pop");
  for (int i = 0; i < n; ++i) {
    if (pops_[i].id != i)
      throw InvalidConfig("pop ids must be dense and sorted: expected " +
                          std::to_string(i) + ", got " + std::to_string(pops_[i].id));
    if (pops_[i].slot_capacity < 0 || pops_[i].used_slots < 0 ||
        pops_[i].used_slots > pops_[i].slot_capacity)
      throw InvalidConfig("pop " + std::to_string(i) + " has invalid slot state");
    if (pops_[i].instance_price < 0)
      throw InvalidConfig("pop " + std::to_string(i) + " has negative price");
    total_slots_ += pops_[i].slot_capacity;
  }
  adjacency_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (std::size_t li = 0; li < links_.size(); ++li) {
    PhysLink& l = links_[li];
    if (l.a > l.b) std::swap(l.a, l.b);
    if (l.a < 0 || l.b >= n || l.a == l.b)
      throw InvalidConfig("link " + std::to_string(li) + " has bad endpoints");
    if (!seen.insert({l.a, l.b}).second)
      throw InvalidConfig("duplicate link between " + std::to_string(l.a) +
                          " and " + std::to_string(l.b));
    if (l.bandwidth_capacity < 0 || l.propagation_delay_ms < 0 || l.bandwidth_price < 0)
      throw InvalidConfig("link " + std::to_string(li) + " has negative attributes");
    if (l.residual_bandwidth < 0) l.residual_bandwidth = l.bandwidth_capacity;
    if (l.residual_bandwidth > l.bandwidth_capacity)
      throw InvalidConfig("link " + std::to_string(li) + " residual exceeds capacity");
    adjacency_[l.a].push_back({l.b, static_cast<int>(li)});
    adjacency_[l.b].push_back({l.a, static_cast<int>(li)});
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  if (n > 1) {
    std::vector<char> reach(n, 0);
    std::vector<int> stack{0};
    reach[0] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, li] : adjacency_[u])
        if (!reach[v]) {
          reach[v] = 1;
          stack.push_back(v);
        }
    }
    for (int i = 0; i < n; ++i)
      if (!reach[i])
        throw InvalidConfig("network is not connected (pop " + std::to_string(i) +
                            " unreachable)");
  }
}

const PopNode& PhysicalNetwork::pop(int id) const {
  if (id < 0 || id >= pop_count())
    throw UnknownPop("no pop with id " + std::to_string(id));
  return pops_[id];
}

const PhysLink& PhysicalNetwork::link(int index) const {
  if (index < 0 || index >= static_cast<int>(links_.size()))
    throw InvalidConfig("no link with index " + std::to_string(index));
  return links_[index];
}

int PhysicalNetwork::link_index(int a, int b) const {
  if (a < 0 || b < 0 || a >= pop_count() || b >= pop_count()) return -1;
  for (auto [v, li] : adjacency_[a])
    if (v == b) return li;
  return -1;
}

const std::vector<std::pair<int, int>>& PhysicalNetwork::neighbors(int pop) const {
  if (pop < 0 || pop >= pop_count())
    throw UnknownPop("no pop with id " + std::to_string(pop));
  return adjacency_[pop];
}

int PhysicalNetwork::free_slots(int pop) const {
  const PopNode& p = this->pop(pop);
  return p.slot_capacity - p.used_slots;
}

double PhysicalNetwork::residual_bandwidth(int link_index) const {
  return link(link_index).residual_bandwidth;
}

int PhysicalNetwork::total_used_slots() const {
  int used = 0;
  for (const PopNode& p : pops_) used += p.used_slots;
  return used;
}

void PhysicalNetwork::allocate(const ResourceDelta& delta) {
  for (const auto& [pop_id, slots] : delta.slots_by_pop) {
    if (slots < 0) throw InvalidConfig("negative slot delta");
    if (free_slots(pop_id) < slots)
      throw InsufficientResources("pop " + std::to_string(pop_id) + " needs " +
                                  std::to_string(slots) + " free slots, has " +
                                  std::to_string(free_slots(pop_id)));
  }
  for (const auto& [li, units] : delta.bandwidth_units_by_link) {
    if (units < 0) throw InvalidConfig("negative bandwidth delta");
    if (bw::units(link(li).residual_bandwidth) < units)
      throw InsufficientResources("link " + std::to_string(li) +
                                  " lacks bandwidth for allocation");
  }
  for (const auto& [pop_id, slots] : delta.slots_by_pop)
    pops_[pop_id].used_slots += slots;
  for (const auto& [li, units] : delta.bandwidth_units_by_link)
    links_[li].residual_bandwidth =
        bw::mbps(bw::units(links_[li].residual_bandwidth) - units);
}

void PhysicalNetwork::release(const ResourceDelta& delta) {
  for (const auto& [pop_id, slots] : delta.slots_by_pop) {
    if (slots < 0) throw InvalidConfig("negative slot delta");
    if (pop(pop_id).used_slots < slots)
      throw InvalidRelease("pop " + std::to_string(pop_id) +
                           " releasing more slots than allocated");
  }
  for (const auto& [li, units] : delta.bandwidth_units_by_link) {
    if (units < 0) throw InvalidConfig("negative bandwidth delta");
    if (bw::units(link(li).residual_bandwidth) + units >
        bw::units(link(li).bandwidth_capacity))
      throw InvalidRelease("link " + std::to_string(li) +
                           " releasing more bandwidth than allocated");
  }
  for (const auto& [pop_id, slots] : delta.slots_by_pop)
    pops_[pop_id].used_slots -= slots;
  for (const auto& [li, units] : delta.bandwidth_units_by_link)
    links_[li].residual_bandwidth =
        bw::mbps(bw::units(links_[li].residual_bandwidth) + units);
}

double path_cost(const PhysicalNetwork& net, const Path& path) {
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < path.pops.size(); ++i) {
    int li = net.link_index(path.pops[i], path.pops[i + 1]);
    if (li < 0) throw NoPath("path uses nonexistent link");
    cost += net.link(li).bandwidth_price;
  }
  return cost;
}

Path make_path(const PhysicalNetwork& net, std::vector<int> pops) {
  Path p;
  p.pops = std::move(pops);
  for (std::size_t i = 0; i + 1 < p.pops.size(); ++i) {
    int li = net.link_index(p.pops[i], p.pops[i + 1]);
    if (li < 0) throw NoPath("path uses nonexistent link");
    p.total_delay_ms += net.link(li).propagation_delay_ms;
    p.bottleneck_bandwidth = std::min(p.bottleneck_bandwidth, net.residual_bandwidth(li));
  }
  return p;
}

namespace {

// usable(link_index, to_pop) gates which hops the search may take.
using HopFilter = std::function<bool(int, int)>;

// Distances from every pop to `root` over usable hops.
std::vector<double> dijkstra_to(const PhysicalNetwork& net, int root,
                                PathMetric metric, const HopFilter& usable) {
  int n = net.pop_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[root] = 0.0;
  heap.push({0.0, root});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (auto [v, li] : net.neighbors(u)) {
      if (!usable(li, v)) continue;
      double nd = d + link_metric(net.link(li), metric);
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

// Walks from cur toward dst along edges that keep the remaining distance
// optimal, trying neighbors in ascending id order so the first complete walk
// is the lexicographically smallest shortest path. Backtracks only when
// zero-weight edges create ties that lead into dead ends.
bool lex_walk(const PhysicalNetwork& net, int cur, int dst, PathMetric metric,
              const std::vector<double>& dist, const HopFilter& usable,
              std::vector<char>& visited, std::vector<int>& pops) {
  if (cur == dst) return true;
  for (auto [v, li] : net.neighbors(cur)) {
    if (visited[v] || !usable(li, v)) continue;
    double via = link_metric(net.link(li), metric) + dist[v];
    if (std::fabs(via - dist[cur]) > tol_for(dist[cur])) continue;
    visited[v] = 1;
    pops.push_back(v);
    if (lex_walk(net, v, dst, metric, dist, usable, visited, pops)) return true;
    pops.pop_back();
    visited[v] = 0;
  }
  return false;
}

// Lexicographic tie-broken Dijkstra over usable hops; empty pops when
// unreachable.
std::vector<int> constrained_shortest(const PhysicalNetwork& net, int src, int dst,
                                      PathMetric metric, const HopFilter& usable) {
  if (src == dst) return {src};
  std::vector<double> dist = dijkstra_to(net, dst, metric, usable);
  if (!std::isfinite(dist[src])) return {};
  std::vector<char> visited(net.pop_count(), 0);
  visited[src] = 1;
  std::vector<int> pops{src};
  if (!lex_walk(net, src, dst, metric, dist, usable, visited, pops)) return {};
  return pops;
}

}  // namespace

Path shortest_path(const PhysicalNetwork& net, int src, int dst, PathMetric metric) {
  net.pop(src);
  net.pop(dst);
  std::vector<int> pops =
      constrained_shortest(net, src, dst, metric, [](int, int) { return true; });
  if (pops.empty())
    throw NoPath("no path from " + std::to_string(src) + " to " + std::to_string(dst));
  return make_path(net, std::move(pops));
}

std::vector<int> filtered_shortest_path(const PhysicalNetwork& net, int src,
                                        int dst, PathMetric metric,
                                        const std::function<bool(int)>& link_ok) {
  net.pop(src);
  net.pop(dst);
  return constrained_shortest(net, src, dst, metric,
                              [&](int li, int) { return link_ok(li); });
}

std::vector<Path> k_cheapest_paths(const PhysicalNetwork& net, int src, int dst, int k) {
  net.pop(src);
  net.pop(dst);
  if (k <= 0) return {};

  struct Candidate {
    double cost;
    std::vector<int> pops;
  };
  auto lower = [](const Candidate& x, const Candidate& y) {
    if (x.cost < y.cost - tol_for(y.cost)) return true;
    if (y.cost < x.cost - tol_for(x.cost)) return false;
    return x.pops < y.pops;
  };

  std::vector<Candidate> accepted;
  std::vector<Candidate> frontier;
  std::set<std::vector<int>> queued;

  std::vector<int> first = constrained_shortest(net, src, dst, PathMetric::Cost,
                                                [](int, int) { return true; });
  if (first.empty()) return {};
  accepted.push_back({path_cost(net, make_path(net, first)), first});

  while (static_cast<int>(accepted.size()) < k) {
    const std::vector<int>& prev = accepted.back().pops;
    for (std::size_t spur = 0; spur + 1 < prev.size(); ++spur) {
      std::vector<int> root(prev.begin(), prev.begin() + spur + 1);
      std::set<int> banned_link;
      for (const Candidate& a : accepted) {
        if (a.pops.size() > spur + 1 &&
            std::equal(root.begin(), root.end(), a.pops.begin())) {
          int li = net.link_index(a.pops[spur], a.pops[spur + 1]);
          if (li >= 0) banned_link.insert(li);
        }
      }
      std::vector<char> banned_pop(net.pop_count(), 0);
      for (std::size_t i = 0; i < spur; ++i) banned_pop[root[i]] = 1;

      std::vector<int> tail = constrained_shortest(
          net, prev[spur], dst, PathMetric::Cost, [&](int li, int to) {
            return !banned_pop[to] && !banned_link.count(li);
          });
      if (tail.empty()) continue;
      std::vector<int> full(root.begin(), root.end() - 1);
      full.insert(full.end(), tail.begin(), tail.end());
      if (!queued.insert(full).second) continue;
      frontier.push_back({path_cost(net, make_path(net, full)), full});
    }
    if (frontier.empty()) break;
    auto best = std::min_element(frontier.begin(), frontier.end(), lower);
    accepted.push_back(*best);
    frontier.erase(best);
  }

  std::vector<Path> out;
  out.reserve(accepted.size());
  for (const Candidate& c : accepted) out.push_back(make_path(net, c.pops));
  return out;
}

PhysicalNetwork generate_topology(std::uint64_t seed, const TopologyParams& params) {
  if (params.n_pops < 1) throw InvalidConfig("topology needs at least one pop");
  Rng rng = Rng(seed).substream("topology");
  int n = params.n_pops;

  std::vector<PopNode> pops(n);
  for (int i = 0; i < n; ++i) {
    pops[i].id = i;
    pops[i].slot_capacity = static_cast<int>(
        rng.uniform_int(params.slot_range.first, params.slot_range.second));
    pops[i].instance_price = rng.uniform_real(params.instance_price_range.first,
                                              params.instance_price_range.second);
  }

  std::set<std::pair<int, int>> pairs;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    int parent = static_cast<int>(rng.uniform_int(0, i - 1));
    edges.push_back({parent, i});
    pairs.insert({std::min(parent, i), std::max(parent, i)});
  }

  long max_edges = static_cast<long>(n) * (n - 1) / 2;
  long target = std::max<long>(n - 1, std::lround(params.avg_degree * n / 2.0));
  target = std::min(target, max_edges);
  long attempts = 0;
  while (static_cast<long>(edges.size()) < target && attempts < 200L * n * n) {
    ++attempts;
    int a = static_cast<int>(rng.uniform_int(0, n - 1));
    int b = static_cast<int>(rng.uniform_int(0, n - 1));
    if (a == b) continue;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (!pairs.insert(key).second) continue;
    edges.push_back(key);
  }

  std::vector<PhysLink> links;
  links.reserve(edges.size());
  for (auto [a, b] : edges) {
    PhysLink l;
    l.a = a;
    l.b = b;
    l.bandwidth_capacity = params.link_bandwidth_mbps;
    l.residual_bandwidth = params.link_bandwidth_mbps;
    l.propagation_delay_ms =
        rng.uniform_real(params.delay_range_ms.first, params.delay_range_ms.second);
    l.bandwidth_price = l.propagation_delay_ms * params.bandwidth_price_per_ms;
    links.push_back(l);
  }
  return PhysicalNetwork(std::move(pops), std::move(links));
}

}  // namespace sfcaas
