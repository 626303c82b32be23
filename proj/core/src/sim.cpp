#include "sfcaas/sim.hpp"

#include <algorithm>
#include <queue>

#include "sfcaas/errors.hpp"
#include "sfcaas/ilp.hpp"

namespace sfcaas {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::Baseline: return "baseline";
    case Algo::Spin: return "spin";
    case Algo::Ilp: return "ilp";
  }
  return "unknown";
}

Algo algo_from_string(const std::string& s) {
  if (s == "baseline") return Algo::Baseline;
  if (s == "spin") return Algo::Spin;
  if (s == "ilp") return Algo::Ilp;
  throw InvalidConfig("unknown algorithm: " + s);
}

namespace {

struct Departure {
  double t;
  long seq;
  ResourceDelta delta;
};

struct DepartureLater {
  bool operator()(const Departure& a, const Departure& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.seq > b.seq;
  }
};

EmbedOutcome ilp_embed(const PhysicalNetwork& net, const Catalog& catalog,
                       const VirtualTopology& vt, double delay_budget_ms,
                       long max_nodes, std::string& reason_out) {
  IlpModel model = build_model(net, vt, catalog);
  SolveLimits limits;
  limits.max_nodes = max_nodes;
  SolveResult res = solve_exact(model, limits, delay_budget_ms);
  if (res.status == SolveStatus::Optimal) {
    EmbedOutcome out;
    out.accepted = true;
    out.embedding = *res.embedding;
    return out;
  }
  reason_out = res.status == SolveStatus::Infeasible ? "infeasible" : "solver_budget";
  return EmbedOutcome::reject(RejectReason::None);
}

}  // namespace

MetricsSeries run_simulation(const PhysicalNetwork& net, const Catalog& catalog,
                             const std::vector<SfcRequest>& workload,
                             const SimConfig& cfg, const SimHooks* hooks) {
  if (cfg.sample_interval_s <= 0.0)
    throw InvalidConfig("sample interval must be positive");

  PhysicalNetwork world = net;
  PathCache paths(world);
  MetricsSeries series;

  std::vector<const SfcRequest*> arrivals;
  arrivals.reserve(workload.size());
  for (const SfcRequest& r : workload) arrivals.push_back(&r);
  std::stable_sort(arrivals.begin(), arrivals.end(),
                   [](const SfcRequest* a, const SfcRequest* b) {
                     return a->arrival_time_s < b->arrival_time_s;
                   });

  std::priority_queue<Departure, std::vector<Departure>, DepartureLater> departing;
  long dep_seq = 0;

  const long total_slots = world.total_slots();
  double next_sample = cfg.sample_interval_s;
  auto flush_samples = [&](double up_to) {
    while (next_sample < up_to) {
      MetricsSample s;
      s.t_s = next_sample;
      s.arrived = series.arrived;
      s.accepted = series.accepted;
      s.rejected = series.rejected;
      s.utilization =
          total_slots > 0
              ? static_cast<double>(world.total_used_slots()) / total_slots
              : 0.0;
      s.cumulative_profit = series.total_profit;
      s.mean_e2e_delay_ms = series.mean_e2e_delay_ms();
      series.samples.push_back(s);
      next_sample += cfg.sample_interval_s;
    }
  };

  auto pop_departures_until = [&](double t) {
    while (!departing.empty() && departing.top().t <= t) {
      flush_samples(departing.top().t);
      world.release(departing.top().delta);
      departing.pop();
    }
  };

  double last_t = 0.0;
  for (const SfcRequest* rp : arrivals) {
    const SfcRequest& req = *rp;
    pop_departures_until(req.arrival_time_s);
    flush_samples(req.arrival_time_s);
    last_t = req.arrival_time_s;

    VirtualTopology vt = translate(req, catalog);
    if (hooks && hooks->before_attempt) hooks->before_attempt(world, req);

    std::string ilp_reason;
    EmbedOutcome out;
    switch (cfg.algo) {
      case Algo::Baseline:
        out = baseline_embed(world, catalog, vt, req.delay_budget_ms, &paths);
        break;
      case Algo::Spin:
        out = spin_embed(world, catalog, vt, req.delay_budget_ms, cfg.k_paths,
                         &paths);
        break;
      case Algo::Ilp:
        out = ilp_embed(world, catalog, vt, req.delay_budget_ms,
                        cfg.ilp_max_nodes, ilp_reason);
        break;
    }
    if (out.accepted && cfg.reject_unprofitable &&
        out.embedding.cost.profit < 0.0)
      out = EmbedOutcome::reject(RejectReason::Unprofitable);

    if (hooks && hooks->after_attempt)
      hooks->after_attempt(world, req, vt, out);

    series.arrived += 1;
    if (out.accepted) {
      ResourceDelta delta = resource_delta(world, vt, out.embedding);
      world.allocate(delta);
      departing.push({req.arrival_time_s + req.lifetime_s, dep_seq++, delta});
      series.accepted += 1;
      series.total_profit += req.lifetime_s / 3600.0 * out.embedding.cost.profit;
      series.delay_sum_ms += routed_end_to_end_delay(world, vt, out.embedding);
      double util = total_slots > 0 ? static_cast<double>(world.total_used_slots()) /
                                          total_slots
                                    : 0.0;
      series.peak_utilization = std::max(series.peak_utilization, util);
    } else {
      series.rejected += 1;
      std::string key = ilp_reason.empty() ? to_string(out.reason) : ilp_reason;
      series.reject_reasons[key] += 1;
    }
  }

  while (!departing.empty()) {
    last_t = departing.top().t;
    flush_samples(last_t);
    world.release(departing.top().delta);
    departing.pop();
  }
  flush_samples(last_t);
  flush_samples(next_sample + cfg.sample_interval_s / 2.0);  // closing sample

  return series;
}

}  // namespace sfcaas
