#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sfcaas/embedding.hpp"

namespace sfcaas {

enum class RejectReason {
  None,
  NoSlot,
  NoBandwidth,
  DelayExceeded,
  SubchainUnembeddable,
  LinkUnroutable,
  SyncUnroutable,
  Unprofitable,
};
const char* to_string(RejectReason r);

struct EmbedOutcome {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  Embedding embedding;  // meaningful only when accepted

  static EmbedOutcome reject(RejectReason r) { return {false, r, {}}; }
};

// One decomposed strand of the chain: a source, one instance per stage and
// the destination. Instances shared between subchains embed with the first
// subchain that reaches them.
struct Subchain {
  int index = 0;
  std::vector<int> instances;
};

// max(#sources, widest stage) subchains; subchain k takes source k mod
// #sources and the (k mod stage-size)-th instance of each stage.
std::vector<Subchain> decompose(const VirtualTopology& vt);

// Memoizes static-metric path queries against one network. Safe to reuse for
// the whole lifetime of a topology since delays and prices never change;
// residual checks always run against live state.
class PathCache {
 public:
  explicit PathCache(const PhysicalNetwork& net) : net_(net) {}
  const Path& delay_path(int src, int dst);                    // throws NoPath
  const std::vector<Path>& cheap_paths(int src, int dst, int k);

 private:
  const PhysicalNetwork& net_;
  std::map<std::pair<int, int>, Path> delay_;
  std::map<std::tuple<int, int, int>, std::vector<Path>> cheap_;
};

// Scratch residual state plus the partial embedding the algorithms grow.
// Nothing here touches the real network; the caller allocates on success.
struct EmbedState {
  std::vector<int> placement;               // instance -> pop, -1 unplaced
  std::vector<std::vector<int>> routes;     // link -> pop sequence
  std::vector<int> slots_free;              // per pop
  std::vector<std::int64_t> bw_free_units;  // per physical link

  EmbedState(const PhysicalNetwork& net, const VirtualTopology& vt);
};

// Greedy reference algorithm. Starting from each source it walks the virtual
// topology, placing every new neighbor at the first node of the delay-shortest
// path toward the destination that still has a slot and prefix bandwidth, and
// routing the connecting link along that prefix. Sync links go over cheapest
// feasible paths at the end, then the delay budget is checked. No cost
// optimization. Failure leaves the network untouched.
EmbedOutcome baseline_embed(const PhysicalNetwork& net, const Catalog& catalog,
                            const VirtualTopology& vt, double delay_budget_ms,
                            PathCache* cache = nullptr);

// Subchain algorithm: decompose the chain, embed every subchain onto one of
// the k cheapest source->destination paths (delay, slot and bandwidth
// filtered, instances packed greedily from the source end), route the
// remaining cross-stage and sync links over cheapest feasible paths, verify
// the delay budget, then run a single migration pass that only ever lowers
// cost. Failure leaves the network untouched.
EmbedOutcome spin_embed(const PhysicalNetwork& net, const Catalog& catalog,
                        const VirtualTopology& vt, double delay_budget_ms,
                        int k_paths = 8, PathCache* cache = nullptr);

// The migration pass on its own: for every instance in id order, try each
// physical neighbor of its host (ascending id); move it and re-route its
// incident links when every constraint still holds and the total cost
// strictly drops. Input must be feasible; output never costs more.
Embedding optimize(const PhysicalNetwork& net, const Catalog& catalog,
                   const VirtualTopology& vt, const Embedding& emb,
                   double delay_budget_ms);

// Phase internals, exposed for tests and tools.
bool embed_subchain(const PhysicalNetwork& net, EmbedState& st,
                    const VirtualTopology& vt, const Subchain& sc,
                    double delay_budget_ms, int k_paths, PathCache* cache);
bool embed_sync_links(const PhysicalNetwork& net, EmbedState& st,
                      const VirtualTopology& vt);

}  // namespace sfcaas
