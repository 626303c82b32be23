#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfcaas/embedding.hpp"

namespace sfcaas {

// Binary program for one chain embedding. Variables:
//   x_{i}_{m}    instance i placed at pop m
//   y_{l}_{m}_{n} virtual link l routed over physical link {m,n} in
//                 direction m->n (two directed variables per undirected link)
// Constraints (by name prefix):
//   pin_*    pinned endpoints stay put
//   place_*  every instance sits at exactly one pop
//   cap_*    slots at a pop within its free capacity
//   bw_*     bandwidth over a physical link (both directions) within residual
//   flow_*   per-virtual-link flow conservation, which ties every route to a
//            contiguous path between the placements
struct IlpVariable {
  std::string name;
  double objective = 0.0;
};

struct IlpTerm {
  int var = 0;
  double coeff = 0.0;
};

enum class Sense { Le, Ge, Eq };

struct IlpConstraint {
  std::string name;
  std::vector<IlpTerm> terms;
  Sense sense = Sense::Le;
  double rhs = 0.0;
};

struct IlpModel {
  std::vector<IlpVariable> vars;
  std::vector<IlpConstraint> constraints;

  int n_instances = 0;
  int n_pops = 0;
  int n_links = 0;   // virtual links
  int n_edges = 0;   // physical links

  int x_index(int inst, int pop) const { return inst * n_pops + pop; }
  // dir 0 routes a->b, dir 1 routes b->a for physical link `edge`.
  int y_index(int link, int edge, int dir) const {
    return n_instances * n_pops + (link * n_edges + edge) * 2 + dir;
  }

  // Snapshot of the residual state the model was built against.
  std::vector<int> slot_rhs;               // per pop
  std::vector<std::int64_t> bw_rhs_units;  // per physical link

  // Source data; null for models reconstructed from text.
  const PhysicalNetwork* net = nullptr;
  const VirtualTopology* vt = nullptr;
  const Catalog* catalog = nullptr;

  bool solvable() const { return net && vt && catalog; }
};

// Builds the full binary program against the network's current residual
// state. Throws UnpinnedEndpoint when a source or destination pseudo-instance
// lacks a pin.
IlpModel build_model(const PhysicalNetwork& net, const VirtualTopology& vt,
                     const Catalog& catalog);

struct SolveLimits {
  // Search nodes (placement and routing decisions) before giving up.
  long max_nodes = 50'000'000;
  // Wall-clock cutoff in seconds; 0 disables it. Node budgets are the
  // deterministic way to bound work, the clock is a safety net only.
  double time_budget_s = 0.0;
};

enum class SolveStatus { Optimal, Infeasible, BudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Embedding> embedding;  // set when status == Optimal
  long nodes_visited = 0;
  double elapsed_s = 0.0;
};

// Exhaustive branch-and-bound: instances in id order, pops in id order,
// routes explored lexicographically, pruned by admissible lower bounds
// (cheapest possible placement of unplaced instances plus cheapest possible
// routing of unrouted links). The returned embedding attains the global
// minimum of the objective; ties resolve to the first assignment in search
// order, so results are reproducible. When delay_budget_ms is nonnegative,
// assignments whose routed end-to-end delay exceeds it are skipped.
SolveResult solve_exact(const IlpModel& model, const SolveLimits& limits = {},
                        double delay_budget_ms = -1.0);

// Canonical LP-format text (see docs/lp-format.md). Exporting, parsing and
// exporting again yields byte-identical text.
std::string export_model(const IlpModel& model);
IlpModel parse_model(const std::string& text);

}  // namespace sfcaas
