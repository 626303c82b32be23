#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sfcaas/catalog.hpp"
#include "sfcaas/embedding.hpp"
#include "sfcaas/heuristics.hpp"
#include "sfcaas/net_model.hpp"
#include "sfcaas/request.hpp"
#include "sfcaas/virtual_topology.hpp"

namespace sfcaas {

enum class Algo { Baseline, Spin, Ilp };

const char* to_string(Algo a);
Algo algo_from_string(const std::string& s);

struct SimConfig {
  Algo algo = Algo::Spin;
  double sample_interval_s = 3600.0;
  bool reject_unprofitable = false;
  int k_paths = 8;
  // Node budget per exact solve when algo == Ilp. Keeps a pathological
  // request from stalling the whole run; budget-exceeded solves count as
  // rejections.
  long ilp_max_nodes = 2'000'000;
};

struct MetricsSample {
  double t_s = 0.0;
  long arrived = 0;
  long accepted = 0;
  long rejected = 0;
  double utilization = 0.0;        // used slots / total slots
  double cumulative_profit = 0.0;  // accrued at admission
  double mean_e2e_delay_ms = 0.0;  // over accepted requests so far
};

struct MetricsSeries {
  std::vector<MetricsSample> samples;

  long arrived = 0;
  long accepted = 0;
  long rejected = 0;
  std::map<std::string, long> reject_reasons;
  double total_profit = 0.0;
  double peak_utilization = 0.0;
  double delay_sum_ms = 0.0;

  double acceptance_ratio() const {
    return arrived > 0 ? static_cast<double>(accepted) / arrived : 0.0;
  }
  double cumulative_profit() const { return total_profit; }
  double mean_e2e_delay_ms() const {
    return accepted > 0 ? delay_sum_ms / accepted : 0.0;
  }
  std::vector<std::pair<double, double>> cpu_utilization_series() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(samples.size());
    for (const MetricsSample& s : samples) out.push_back({s.t_s, s.utilization});
    return out;
  }
};

// Observation points for tests and tooling. after_attempt fires once the
// admission decision is final but before any resources are allocated, so the
// network state it sees is the pre-admission one.
struct SimHooks {
  std::function<void(const PhysicalNetwork&, const SfcRequest&)> before_attempt;
  std::function<void(const PhysicalNetwork&, const SfcRequest&,
                     const VirtualTopology&, const EmbedOutcome&)>
      after_attempt;
};

// Replays the workload against a private copy of the network: translate each
// request on arrival, embed it with the configured algorithm, allocate on
// accept and release on departure. Departures sort before arrivals at equal
// timestamps. The run drains all departures after the last arrival.
MetricsSeries run_simulation(const PhysicalNetwork& net, const Catalog& catalog,
                             const std::vector<SfcRequest>& workload,
                             const SimConfig& cfg,
                             const SimHooks* hooks = nullptr);

}  // namespace sfcaas
