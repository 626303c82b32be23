// Command-line front end: scenario generation, one-shot solves, simulation
// sweeps and price-list reports. Everything an experiment needs flows through
// here; the library stays free of I/O policy.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sfcaas/catalog.hpp"
#include "sfcaas/errors.hpp"
#include "sfcaas/heuristics.hpp"
#include "sfcaas/ilp.hpp"
#include "sfcaas/json_io.hpp"
#include "sfcaas/net_model.hpp"
#include "sfcaas/request.hpp"
#include "sfcaas/sim.hpp"
#include "sfcaas/virtual_topology.hpp"

namespace {

using namespace sfcaas;

// Stable exit codes, also listed in --help and the README.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kReject = 2;
constexpr int kInfeasible = 3;
constexpr int kBudgetExceeded = 4;
constexpr int kParseError = 5;
constexpr int kIoError = 6;

std::pair<double, double> pair_of(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

TopologyParams topology_params_from(const json& j) {
  TopologyParams p;
  p.n_pops = j.value("n_pops", p.n_pops);
  if (j.contains("slot_range")) {
    auto [lo, hi] = pair_of(j.at("slot_range"));
    p.slot_range = {static_cast<int>(lo), static_cast<int>(hi)};
  }
  if (j.contains("delay_range_ms")) p.delay_range_ms = pair_of(j.at("delay_range_ms"));
  p.link_bandwidth_mbps = j.value("link_bandwidth_mbps", p.link_bandwidth_mbps);
  p.avg_degree = j.value("avg_degree", p.avg_degree);
  if (j.contains("instance_price_range"))
    p.instance_price_range = pair_of(j.at("instance_price_range"));
  p.bandwidth_price_per_ms = j.value("bandwidth_price_per_ms", p.bandwidth_price_per_ms);
  return p;
}

WorkloadParams workload_params_from(const json& j) {
  WorkloadParams p;
  p.arrival_rate_rps = j.value("arrival_rate_rps", p.arrival_rate_rps);
  p.horizon_s = j.value("horizon_s", p.horizon_s);
  p.mean_lifetime_s = j.value("mean_lifetime_s", p.mean_lifetime_s);
  p.mean_chain_len = j.value("mean_chain_len", p.mean_chain_len);
  p.mean_sources = j.value("mean_sources", p.mean_sources);
  if (j.contains("demand_range_pps")) p.demand_range_pps = pair_of(j.at("demand_range_pps"));
  p.packet_size_bytes = j.value("packet_size_bytes", p.packet_size_bytes);
  return p;
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  double rate = -1.0;
  double horizon = -1.0;
  bool seed_set = false;
};

int cmd_gen(const GenArgs& a) {
  json cfg = a.config.empty() ? json::object() : load_json_file(a.config);
  std::uint64_t seed = a.seed_set ? a.seed : cfg.value("seed", std::uint64_t{1});
  TopologyParams tp = topology_params_from(cfg.value("topology", json::object()));
  WorkloadParams wp = workload_params_from(cfg.value("workload", json::object()));
  if (a.rate >= 0) wp.arrival_rate_rps = a.rate;
  if (a.horizon >= 0) wp.horizon_s = a.horizon;
  std::string out = !a.out.empty() ? a.out : cfg.value("out_dir", std::string("out"));

  PhysicalNetwork net = generate_topology(seed, tp);
  Catalog catalog = default_catalog(seed);
  std::vector<SfcRequest> workload = generate_workload(seed, net, catalog, wp);

  save_json_file(out + "/topology.json", topology_to_json(net));
  save_json_file(out + "/catalog.json", catalog_to_json(catalog));
  write_text_file(out + "/workload.jsonl", workload_to_jsonl(workload));
  std::cout << "wrote " << out << "/topology.json (" << net.pop_count()
            << " pops, " << net.links().size() << " links)\n"
            << "wrote " << out << "/catalog.json ("
            << catalog.vnf_types().size() << " vnf types, "
            << catalog.flavors().size() << " flavors)\n"
            << "wrote " << out << "/workload.jsonl (" << workload.size()
            << " requests)\n";
  return kOk;
}

// -------------------------------------------------------------- solve ----

struct SolveArgs {
  std::string topology;
  std::string catalog;
  std::string vt_file;
  std::string request_file;
  std::string algo = "ilp";
  std::string export_lp;
  std::string out;
  long max_nodes = 50'000'000;
  double time_budget_s = 0.0;
  int k_paths = 8;
};

int cmd_solve(const SolveArgs& a) {
  PhysicalNetwork net = topology_from_json(load_json_file(a.topology));
  Catalog catalog = catalog_from_json(load_json_file(a.catalog));

  VirtualTopology vt;
  if (!a.vt_file.empty()) {
    vt = vt_from_json(load_json_file(a.vt_file));
  } else {
    SfcRequest r = request_from_json(load_json_file(a.request_file));
    if (r.delay_budget_ms <= 0) r.delay_budget_ms = delay_budget(net, r);
    vt = translate(r, catalog);
  }
  double budget = vt.delay_budget_ms > 0
                      ? vt.delay_budget_ms
                      : std::numeric_limits<double>::infinity();

  json report;
  report["algo"] = a.algo;
  report["delay_budget_ms"] = budget;

  Algo algo = algo_from_string(a.algo);
  IlpModel model;
  if (algo == Algo::Ilp || !a.export_lp.empty())
    model = build_model(net, vt, catalog);
  if (!a.export_lp.empty()) {
    write_text_file(a.export_lp, export_model(model));
    report["lp_file"] = a.export_lp;
  }

  int code = kOk;
  std::optional<Embedding> emb;
  if (algo == Algo::Ilp) {
    SolveLimits limits;
    limits.max_nodes = a.max_nodes;
    limits.time_budget_s = a.time_budget_s;
    SolveResult res =
        solve_exact(model, limits, std::isinf(budget) ? -1.0 : budget);
    report["nodes_visited"] = res.nodes_visited;
    report["elapsed_s"] = res.elapsed_s;
    switch (res.status) {
      case SolveStatus::Optimal:
        report["status"] = "optimal";
        emb = res.embedding;
        break;
      case SolveStatus::Infeasible:
        report["status"] = "infeasible";
        code = kInfeasible;
        break;
      case SolveStatus::BudgetExceeded:
        report["status"] = "budget_exceeded";
        code = kBudgetExceeded;
        break;
    }
  } else {
    EmbedOutcome out = algo == Algo::Spin
                           ? spin_embed(net, catalog, vt, budget, a.k_paths)
                           : baseline_embed(net, catalog, vt, budget);
    if (out.accepted) {
      report["status"] = "accepted";
      emb = out.embedding;
    } else {
      report["status"] = "rejected";
      report["reason"] = to_string(out.reason);
      code = kReject;
    }
  }

  if (emb) {
    report["embedding"] = embedding_to_json(*emb);
    json violations = json::array();
    for (const Violation& v : check_feasibility(net, vt, *emb, budget))
      violations.push_back(json{{"constraint", v.constraint}, {"detail", v.detail}});
    report["violations"] = std::move(violations);
  }

  std::cout << report.dump(2) << "\n";
  if (!a.out.empty()) save_json_file(a.out, report);
  return code;
}

// ----------------------------------------------------------- simulate ----

struct SimulateArgs {
  std::string config;
  std::string topology_file;
  std::string catalog_file;
  std::string workload_file;
  std::vector<std::string> algos;
  std::vector<double> rates;
  std::vector<std::uint64_t> seeds;
  double horizon = -1.0;
  double sample_interval = -1.0;
  bool reject_unprofitable = false;
  int k_paths = -1;
  long ilp_max_nodes = -1;
  int threads = 0;
  std::string out;
};

struct Cell {
  std::string algo;
  double rate = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  json summary;
};

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

int cmd_simulate(const SimulateArgs& a) {
  json cfg = a.config.empty() ? json::object() : load_json_file(a.config);

  std::vector<std::string> algos =
      !a.algos.empty() ? a.algos
                       : cfg.value("algos", std::vector<std::string>{"baseline", "spin"});
  std::vector<double> rates =
      !a.rates.empty() ? a.rates : cfg.value("rates", std::vector<double>{0.03});
  std::vector<std::uint64_t> seeds =
      !a.seeds.empty() ? a.seeds : cfg.value("seeds", std::vector<std::uint64_t>{1});
  for (const std::string& name : algos) algo_from_string(name);  // validate early

  std::string topology_file =
      !a.topology_file.empty() ? a.topology_file : cfg.value("topology_file", std::string());
  std::string catalog_file =
      !a.catalog_file.empty() ? a.catalog_file : cfg.value("catalog_file", std::string());
  std::string workload_file =
      !a.workload_file.empty() ? a.workload_file : cfg.value("workload_file", std::string());
  json topo_cfg = cfg.value("topology", json::object());
  json work_cfg = cfg.value("workload", json::object());

  double horizon = a.horizon >= 0 ? a.horizon : cfg.value("horizon_s", -1.0);
  SimConfig base;
  base.sample_interval_s = a.sample_interval > 0
                               ? a.sample_interval
                               : cfg.value("sample_interval_s", 3600.0);
  base.reject_unprofitable =
      a.reject_unprofitable || cfg.value("reject_unprofitable", false);
  base.k_paths = a.k_paths > 0 ? a.k_paths : cfg.value("k_paths", 8);
  base.ilp_max_nodes =
      a.ilp_max_nodes > 0 ? a.ilp_max_nodes : cfg.value("ilp_max_nodes", 2'000'000L);
  std::string out_dir = !a.out.empty() ? a.out : cfg.value("out_dir", std::string("results"));
  int threads = a.threads > 0 ? a.threads : cfg.value("threads", 0);

  std::vector<Cell> cells;
  for (const std::string& algo : algos)
    for (double rate : rates)
      for (std::uint64_t seed : seeds) cells.push_back(Cell{algo, rate, seed});

  auto run_cell = [&](Cell& cell) {
    try {
      PhysicalNetwork net =
          topology_file.empty()
              ? generate_topology(cell.seed, topology_params_from(topo_cfg))
              : topology_from_json(load_json_file(topology_file));
      Catalog catalog = catalog_file.empty()
                            ? default_catalog(cell.seed)
                            : catalog_from_json(load_json_file(catalog_file));
      std::vector<SfcRequest> workload;
      if (workload_file.empty()) {
        WorkloadParams wp = workload_params_from(work_cfg);
        wp.arrival_rate_rps = cell.rate;
        if (horizon >= 0) wp.horizon_s = horizon;
        workload = generate_workload(cell.seed, net, catalog, wp);
      } else {
        workload = workload_from_jsonl(read_text_file(workload_file));
      }
      SimConfig sc = base;
      sc.algo = algo_from_string(cell.algo);
      MetricsSeries series = run_simulation(net, catalog, workload, sc);

      std::string stem = out_dir + "/" + cell.algo + "_r" +
                         format_number(cell.rate) + "_s" + std::to_string(cell.seed);
      write_text_file(stem + ".csv", series_to_csv(series));
      json summary = series_summary(series);
      summary["algo"] = cell.algo;
      summary["rate"] = cell.rate;
      summary["seed"] = cell.seed;
      save_json_file(stem + ".json", summary);
      cell.summary = std::move(summary);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, hw ? hw : 1u);
  n_workers = std::min(n_workers, cells.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
        run_cell(cells[i]);
    });
  for (std::thread& t : pool) t.join();

  // Aggregate across seeds per (algo, rate); failed cells are reported and
  // left out.
  std::map<std::pair<std::string, double>, std::vector<const Cell*>> groups;
  std::size_t failures = 0;
  for (const Cell& c : cells) {
    if (!c.ok) {
      ++failures;
      std::cerr << "cell " << c.algo << " rate=" << format_number(c.rate)
                << " seed=" << c.seed << " failed: " << c.error << "\n";
      continue;
    }
    groups[{c.algo, c.rate}].push_back(&c);
  }

  std::string csv =
      "algo,rate,cells,acceptance_ratio_mean,acceptance_ratio_std,"
      "mapped_requests_mean,mapped_requests_std,"
      "cpu_utilization_mean,cpu_utilization_std,"
      "cumulative_profit_mean,cumulative_profit_std,"
      "mean_e2e_delay_ms_mean,mean_e2e_delay_ms_std\n";
  for (const auto& [key, group] : groups) {
    auto collect = [&](const char* field) {
      std::vector<double> xs;
      for (const Cell* c : group) xs.push_back(c->summary.at(field).get<double>());
      return stats_of(xs);
    };
    Stats ratio = collect("acceptance_ratio");
    Stats mapped = collect("accepted");
    Stats util = collect("peak_utilization");
    Stats profit = collect("total_profit");
    Stats delay = collect("mean_e2e_delay_ms");
    csv += key.first + "," + format_number(key.second) + "," +
           std::to_string(group.size()) + "," + format_number(ratio.mean) +
           "," + format_number(ratio.stddev) + "," + format_number(mapped.mean) +
           "," + format_number(mapped.stddev) + "," + format_number(util.mean) +
           "," + format_number(util.stddev) + "," + format_number(profit.mean) +
           "," + format_number(profit.stddev) + "," + format_number(delay.mean) +
           "," + format_number(delay.stddev) + "\n";
  }
  write_text_file(out_dir + "/aggregate.csv", csv);
  std::cout << csv;
  if (failures == cells.size()) return kError;
  return kOk;
}

// ------------------------------------------------------- report-costs ----

struct ReportArgs {
  std::string catalog;
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string out;
};

int cmd_report_costs(const ReportArgs& a) {
  Catalog catalog = !a.catalog.empty()
                        ? catalog_from_json(load_json_file(a.catalog))
                        : default_catalog(a.seed);
  std::string csv = "flavor,price_per_hour,vcpu,micro_count,vcpu_delta\n";
  for (const CostReportRow& r : cost_effectiveness_report(catalog))
    csv += r.flavor + "," + format_number(r.price_per_hour) + "," +
           std::to_string(r.vcpu) + "," + std::to_string(r.micro_count) + "," +
           std::to_string(r.vcpu_delta) + "\n";
  std::cout << csv;
  if (!a.out.empty()) write_text_file(a.out, csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sfcaas: service chain provisioning toolkit\n"
      "exit codes: 0 ok, 1 error, 2 rejected, 3 infeasible, "
      "4 budget exceeded, 5 parse error, 6 io error"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "generate topology, catalog and workload files");
  cgen->add_option("--config", gen.config, "scenario config JSON");
  CLI::Option* gen_seed = cgen->add_option("--seed", gen.seed, "root seed");
  cgen->add_option("--rate", gen.rate, "arrival rate, requests/s");
  cgen->add_option("--horizon", gen.horizon, "workload horizon, seconds");
  cgen->add_option("--out", gen.out, "output directory (default: out)");

  SolveArgs solve;
  CLI::App* csolve = app.add_subcommand("solve", "embed one chain and report placement, routes and costs");
  csolve->add_option("--topology", solve.topology, "topology JSON")->required();
  csolve->add_option("--catalog", solve.catalog, "catalog JSON")->required();
  CLI::Option* ovt = csolve->add_option("--vt", solve.vt_file, "virtual topology JSON");
  CLI::Option* oreq = csolve->add_option("--request", solve.request_file, "request JSON (translated first)");
  ovt->excludes(oreq);
  csolve->add_option("--algo", solve.algo, "ilp | spin | baseline (default: ilp)");
  csolve->add_option("--export-lp", solve.export_lp, "write the model as LP-format text");
  csolve->add_option("--out", solve.out, "write the report JSON here too");
  csolve->add_option("--max-nodes", solve.max_nodes, "search node budget for --algo ilp");
  csolve->add_option("--time-budget", solve.time_budget_s, "wall-clock cutoff in seconds, 0 = off");
  csolve->add_option("--k-paths", solve.k_paths, "candidate paths per subchain for --algo spin");

  SimulateArgs sim;
  CLI::App* csim = app.add_subcommand("simulate", "run arrival/departure simulations over a sweep");
  csim->add_option("--config", sim.config, "sweep config JSON");
  csim->add_option("--topology", sim.topology_file, "fixed topology JSON (default: generate per seed)");
  csim->add_option("--catalog", sim.catalog_file, "fixed catalog JSON (default: generate per seed)");
  csim->add_option("--workload", sim.workload_file, "replay this workload JSONL instead of generating");
  csim->add_option("--algo", sim.algos, "algorithms to run (repeatable)");
  csim->add_option("--rate", sim.rates, "arrival rates to sweep (repeatable)");
  csim->add_option("--seed", sim.seeds, "seeds to sweep (repeatable)");
  csim->add_option("--horizon", sim.horizon, "workload horizon, seconds");
  csim->add_option("--sample-interval", sim.sample_interval, "metrics sampling period, seconds");
  csim->add_flag("--reject-unprofitable", sim.reject_unprofitable, "decline chains with negative profit");
  csim->add_option("--k-paths", sim.k_paths, "candidate paths per subchain (spin)");
  csim->add_option("--ilp-max-nodes", sim.ilp_max_nodes, "per-request solver node budget (ilp)");
  csim->add_option("--threads", sim.threads, "worker threads (default: hardware)");
  csim->add_option("--out", sim.out, "results directory (default: results)");

  ReportArgs report;
  CLI::App* crep = app.add_subcommand("report-costs", "emit the flavor cost-effectiveness table as CSV");
  crep->add_option("--catalog", report.catalog, "catalog JSON (default: generated catalog)");
  CLI::Option* rep_seed = crep->add_option("--seed", report.seed, "seed for the generated catalog");
  crep->add_option("--out", report.out, "write the CSV here too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  gen.seed_set = gen_seed->count() > 0;
  report.seed_set = rep_seed->count() > 0;

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (csolve->parsed()) {
      if (solve.vt_file.empty() && solve.request_file.empty())
        throw InvalidConfig("solve needs --vt or --request");
      return cmd_solve(solve);
    }
    if (csim->parsed()) return cmd_simulate(sim);
    if (crep->parsed()) return cmd_report_costs(report);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
