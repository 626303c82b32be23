// End-to-end acceptance checks. Each check prints exactly one line:
//   [PASS] <n>: <what was verified> (<key numbers>)
//   [FAIL] <n>: <what was verified> (<what went wrong>)
// and the process exits with the number of failed checks.
//
// argv[1] must point at the sfcaas CLI binary; the determinism and cost
// report checks shell out to it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sfcaas/catalog.hpp"
#include "sfcaas/embedding.hpp"
#include "sfcaas/heuristics.hpp"
#include "sfcaas/ilp.hpp"
#include "sfcaas/json_io.hpp"
#include "sfcaas/net_model.hpp"
#include "sfcaas/request.hpp"
#include "sfcaas/rng.hpp"
#include "sfcaas/sim.hpp"
#include "sfcaas/virtual_topology.hpp"

#include "support/oracles.hpp"
#include "support/small_instances.hpp"

using namespace sfcaas;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerances and workload sizes, pinned.
constexpr int kTinyInstances = 120;          // oracle-equivalence corpus
constexpr double kObjectiveTol = 1e-9;       // relative, solver vs oracle
constexpr double kSoundnessRate = 0.03;      // rps
constexpr double kSoundnessHorizon = 400000; // s, ~12k requests at 0.03 rps
constexpr double kMappedRate = 0.03;         // rps, the headline comparison
constexpr double kMappedHorizon = 432000;    // s, 5 days
constexpr double kSweepHorizon = 86400;      // s, 1 day per cell
const std::vector<double> kSweepRates{0.01, 0.03, 0.06, 0.1};
const std::vector<std::uint64_t> kMappedSeeds{1, 2, 3, 4, 5};
const std::vector<std::uint64_t> kSweepSeeds{11, 12, 13, 14, 15};

struct CheckResult {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt2(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / xs.size();
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs), acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / (xs.size() - 1));
}

// ---------------------------------------------------------------------------
// 1 + 3 share the tiny-instance corpus and its exact solutions.

struct TinyCase {
  testgen::TinyInstance inst;
  bool feasible = false;
  double optimal = kInf;
};

std::vector<TinyCase> g_corpus;

CheckResult check_oracle_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240601);
  int mismatches = 0, feasible = 0;
  for (int trial = 0; trial < kTinyInstances; ++trial) {
    TinyCase tc;
    tc.inst = testgen::make_tiny(rng);
    SolveResult r = solve_exact(build_model(tc.inst.net, tc.inst.vt, tc.inst.catalog));
    auto best = oracle::best_objective(tc.inst.net, tc.inst.vt, tc.inst.catalog);
    if (best.has_value() != (r.status == SolveStatus::Optimal)) {
      ++mismatches;
    } else if (best) {
      tc.feasible = true;
      tc.optimal = *best;
      ++feasible;
      double got = r.embedding->cost.objective();
      if (std::abs(got - *best) > kObjectiveTol * std::max(1.0, std::abs(*best)))
        ++mismatches;
    }
    g_corpus.push_back(std::move(tc));
  }
  double elapsed = seconds_since(t0);
  bool pass = mismatches == 0 && elapsed < 60.0 && feasible >= 20;
  return {pass, std::to_string(kTinyInstances) + " instances, " +
                    std::to_string(feasible) + " feasible, " +
                    std::to_string(mismatches) + " mismatches, " + fmt2(elapsed) + " s"};
}

CheckResult check_optimality_gap() {
  if (g_corpus.empty()) return {false, "no corpus (check 1 did not run)"};
  int feasible = 0, baseline_not_better = 0, below_optimal = 0;
  for (const TinyCase& tc : g_corpus) {
    if (!tc.feasible) continue;
    ++feasible;
    EmbedOutcome b = baseline_embed(tc.inst.net, tc.inst.catalog, tc.inst.vt, 1e9);
    EmbedOutcome s = spin_embed(tc.inst.net, tc.inst.catalog, tc.inst.vt, 1e9);
    double jb = b.accepted ? b.embedding.cost.objective() : kInf;
    double js = s.accepted ? s.embedding.cost.objective() : kInf;
    if (jb >= js - 1e-12) ++baseline_not_better;
    double floor = tc.optimal - kObjectiveTol * std::max(1.0, tc.optimal);
    if (jb < floor || js < floor) ++below_optimal;
  }
  double share = feasible > 0 ? static_cast<double>(baseline_not_better) / feasible : 0.0;
  bool pass = feasible > 0 && share >= 0.60 && below_optimal == 0;
  return {pass, "baseline >= spin on " + fmt2(100.0 * share) + "% of " +
                    std::to_string(feasible) + " feasible, " +
                    std::to_string(below_optimal) + " below optimal"};
}

// ---------------------------------------------------------------------------
// 2: accepted embeddings are feasible, rejections leave no trace.

struct ResidualSnapshot {
  std::vector<int> slots;
  std::vector<double> resid;
};

ResidualSnapshot snapshot(const PhysicalNetwork& net) {
  ResidualSnapshot s;
  s.slots.reserve(net.pop_count());
  for (int p = 0; p < net.pop_count(); ++p) s.slots.push_back(net.free_slots(p));
  s.resid.reserve(net.links().size());
  for (std::size_t li = 0; li < net.links().size(); ++li)
    s.resid.push_back(net.residual_bandwidth(static_cast<int>(li)));
  return s;
}

bool bit_identical(const ResidualSnapshot& a, const ResidualSnapshot& b) {
  return a.slots == b.slots && a.resid.size() == b.resid.size() &&
         std::memcmp(a.resid.data(), b.resid.data(),
                     a.resid.size() * sizeof(double)) == 0;
}

CheckResult check_heuristic_soundness() {
  long attempts_min = std::numeric_limits<long>::max();
  long bad_accepts = 0, dirty_rejects = 0, over_budget = 0;

  for (Algo algo : {Algo::Baseline, Algo::Spin}) {
    PhysicalNetwork net = generate_topology(1001, TopologyParams{});
    Catalog catalog = default_catalog(1001);
    WorkloadParams wp;
    wp.arrival_rate_rps = kSoundnessRate;
    wp.horizon_s = kSoundnessHorizon;
    auto wl = generate_workload(1001, net, catalog, wp);

    long attempts = 0;
    ResidualSnapshot before;
    SimHooks hooks;
    hooks.before_attempt = [&](const PhysicalNetwork& n, const SfcRequest&) {
      before = snapshot(n);
    };
    hooks.after_attempt = [&](const PhysicalNetwork& n, const SfcRequest& r,
                              const VirtualTopology& vt, const EmbedOutcome& out) {
      ++attempts;
      if (!out.accepted) {
        if (!bit_identical(before, snapshot(n))) ++dirty_rejects;
        return;
      }
      if (!check_feasibility(n, vt, out.embedding, r.delay_budget_ms).empty())
        ++bad_accepts;
      double d = routed_end_to_end_delay(n, vt, out.embedding);
      if (d > r.delay_budget_ms + 1e-9 * (1.0 + r.delay_budget_ms)) ++over_budget;
    };

    SimConfig cfg;
    cfg.algo = algo;
    run_simulation(net, catalog, wl, cfg, &hooks);
    attempts_min = std::min(attempts_min, attempts);
  }

  bool pass = attempts_min >= 10000 && bad_accepts == 0 && dirty_rejects == 0 &&
              over_budget == 0;
  return {pass, std::to_string(attempts_min) + " requests/algorithm, " +
                    std::to_string(bad_accepts) + " infeasible accepts, " +
                    std::to_string(dirty_rejects) + " dirty rejections, " +
                    std::to_string(over_budget) + " budget overruns"};
}

// ---------------------------------------------------------------------------
// 4: mapped requests at the headline rate.

CheckResult check_mapped_requests() {
  std::vector<double> base_mapped, spin_mapped;
  double worst_seed_s = 0.0;
  for (std::uint64_t seed : kMappedSeeds) {
    auto t0 = std::chrono::steady_clock::now();
    PhysicalNetwork net = generate_topology(seed, TopologyParams{});
    Catalog catalog = default_catalog(seed);
    WorkloadParams wp;
    wp.arrival_rate_rps = kMappedRate;
    wp.horizon_s = kMappedHorizon;
    auto wl = generate_workload(seed, net, catalog, wp);

    SimConfig cfg;
    cfg.algo = Algo::Baseline;
    base_mapped.push_back(run_simulation(net, catalog, wl, cfg).accepted);
    cfg.algo = Algo::Spin;
    spin_mapped.push_back(run_simulation(net, catalog, wl, cfg).accepted);
    worst_seed_s = std::max(worst_seed_s, seconds_since(t0));
  }
  double mb = mean_of(base_mapped), ms = mean_of(spin_mapped);
  double gain = mb > 0 ? (ms - mb) / mb : kInf;
  bool pass = gain >= 0.10 && worst_seed_s < 300.0;
  return {pass, "spin " + fmt2(ms) + " vs baseline " + fmt2(mb) + " mapped (+" +
                    fmt2(100.0 * gain) + "%), worst seed " + fmt2(worst_seed_s) + " s"};
}

// ---------------------------------------------------------------------------
// 5, 6, 7 share one sweep over rates x seeds x algorithms.

struct SweepCell {
  std::vector<double> ratio, profit, delay;
};

std::map<std::pair<int, double>, SweepCell> g_sweep;  // (algo, rate) -> stats
bool g_sweep_done = false;

void run_sweep() {
  if (g_sweep_done) return;
  for (std::uint64_t seed : kSweepSeeds) {
    PhysicalNetwork net = generate_topology(seed, TopologyParams{});
    Catalog catalog = default_catalog(seed);
    for (double rate : kSweepRates) {
      WorkloadParams wp;
      wp.arrival_rate_rps = rate;
      wp.horizon_s = kSweepHorizon;
      auto wl = generate_workload(seed, net, catalog, wp);
      for (Algo algo : {Algo::Baseline, Algo::Spin}) {
        SimConfig cfg;
        cfg.algo = algo;
        MetricsSeries s = run_simulation(net, catalog, wl, cfg);
        SweepCell& cell = g_sweep[{static_cast<int>(algo), rate}];
        cell.ratio.push_back(s.acceptance_ratio());
        cell.profit.push_back(s.total_profit);
        cell.delay.push_back(s.mean_e2e_delay_ms());
      }
    }
  }
  g_sweep_done = true;
}

CheckResult check_profit_dominance() {
  run_sweep();
  std::string detail;
  bool pass = true;
  for (double rate : kSweepRates) {
    double pb = mean_of(g_sweep[{static_cast<int>(Algo::Baseline), rate}].profit);
    double ps = mean_of(g_sweep[{static_cast<int>(Algo::Spin), rate}].profit);
    if (ps < pb - 1e-9) pass = false;
    detail += fmt2(rate) + ": " + fmt2(ps) + "/" + fmt2(pb) + " ";
  }
  return {pass, "spin/baseline profit per rate: " + detail};
}

CheckResult check_acceptance_trend() {
  run_sweep();
  bool pass = true;
  std::string detail;
  for (Algo algo : {Algo::Baseline, Algo::Spin}) {
    int inversions = 0;
    bool inversion_too_big = false;
    double prev = kInf;
    for (double rate : kSweepRates) {
      const SweepCell& cell = g_sweep[{static_cast<int>(algo), rate}];
      double m = mean_of(cell.ratio);
      if (m > prev) {
        ++inversions;
        if (m - prev > stddev_of(cell.ratio)) inversion_too_big = true;
      }
      prev = m;
    }
    if (inversions > 2 || inversion_too_big) pass = false;
    detail += std::string(to_string(algo)) + " inversions " +
              std::to_string(inversions) + (inversion_too_big ? "(>1sd) " : " ");
  }
  for (double rate : kSweepRates) {
    double rb = mean_of(g_sweep[{static_cast<int>(Algo::Baseline), rate}].ratio);
    double rs = mean_of(g_sweep[{static_cast<int>(Algo::Spin), rate}].ratio);
    if (rs < rb - 1e-12) {
      pass = false;
      detail += "spin<baseline@" + fmt2(rate) + " ";
    }
  }
  return {pass, detail};
}

CheckResult check_delay_dominance() {
  run_sweep();
  bool pass = true;
  std::string detail;
  for (double rate : kSweepRates) {
    double db = mean_of(g_sweep[{static_cast<int>(Algo::Baseline), rate}].delay);
    double ds = mean_of(g_sweep[{static_cast<int>(Algo::Spin), rate}].delay);
    if (ds > db + 1e-9) pass = false;
    detail += fmt2(rate) + ": " + fmt2(ds) + "/" + fmt2(db) + " ";
  }
  return {pass, "spin/baseline mean delay ms per rate: " + detail};
}

// ---------------------------------------------------------------------------
// 8: translation arithmetic on 10^3 requests.

CheckResult check_translation_arithmetic() {
  PhysicalNetwork net = generate_topology(2024, TopologyParams{});
  Catalog catalog = default_catalog(2024);
  WorkloadParams wp;
  wp.horizon_s = 60000.0;
  wp.arrival_rate_rps = 0.02;
  auto wl = generate_workload(2024, net, catalog, wp);
  if (wl.size() < 1000) return {false, "workload too small: " + std::to_string(wl.size())};
  wl.resize(1000);

  long violations = 0;
  for (const SfcRequest& r : wl) {
    VirtualTopology vt = translate(r, catalog);
    double bw = request_bandwidth_mbps(r);
    if (vt.stages.size() != r.chain.size() + 2) ++violations;
    for (std::size_t s = 1; s + 1 < vt.stages.size(); ++s) {
      double cap = catalog.vnf(r.chain[s - 1]).capacity_pps_on_micro;
      double n = static_cast<double>(vt.stages[s].size());
      if (n * cap < r.demand_pps || (n - 1) * cap >= r.demand_pps) ++violations;
    }
    for (std::size_t s = 0; s + 1 < vt.stages.size(); ++s) {
      double cut = 0.0;
      long links = 0;
      double per_link = -1.0;
      bool unequal = false;
      for (const VirtualLink& l : vt.links) {
        if (l.is_sync) continue;
        bool from_here = false, to_next = false;
        for (int id : vt.stages[s]) from_here = from_here || id == l.i;
        for (int id : vt.stages[s + 1]) to_next = to_next || id == l.j;
        if (!from_here || !to_next) continue;
        cut += l.bandwidth_mbps;
        ++links;
        if (per_link < 0) per_link = l.bandwidth_mbps;
        else if (l.bandwidth_mbps != per_link) unequal = true;
      }
      long expect = static_cast<long>(vt.stages[s].size() * vt.stages[s + 1].size());
      if (links != expect || unequal || std::abs(cut - bw) > 1e-9 * bw) ++violations;
    }
    for (std::size_t s = 1; s + 1 < vt.stages.size(); ++s) {
      const VnfType& v = catalog.vnf(r.chain[s - 1]);
      long in_stage = 0;
      for (const VirtualLink& l : vt.links) {
        if (!l.is_sync) continue;
        bool i_in = false, j_in = false;
        for (int id : vt.stages[s]) {
          i_in = i_in || id == l.i;
          j_in = j_in || id == l.j;
        }
        if (i_in != j_in) ++violations;  // sync must not cross stages
        if (i_in && j_in) ++in_stage;
      }
      bool expect_sync = v.sync_required && vt.stages[s].size() >= 2;
      if (expect_sync != (in_stage > 0)) ++violations;
    }
  }
  return {violations == 0,
          "1000 requests, " + std::to_string(violations) + " violations"};
}

// ---------------------------------------------------------------------------
// 9 + 10 drive the installed CLI.

int run_cmd(const std::string& cmd) {
  return std::system((cmd + " >/dev/null 2>&1").c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  std::sort(rel.begin(), rel.end());
  std::vector<fs::path> relb;
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) relb.push_back(fs::relative(e.path(), b));
  std::sort(relb.begin(), relb.end());
  if (rel != relb) {
    why = "different file sets";
    return false;
  }
  for (const auto& r : rel)
    if (slurp(a / r) != slurp(b / r)) {
      why = r.string() + " differs";
      return false;
    }
  if (rel.empty()) {
    why = "no files produced";
    return false;
  }
  return true;
}

CheckResult check_determinism(const std::string& cli) {
  fs::path root = fs::temp_directory_path() / "sfcaas_acceptance";
  std::error_code ec;
  fs::remove_all(root, ec);
  fs::create_directories(root);

  auto gen_cmd = [&](const fs::path& out) {
    return cli + " gen --seed 5 --rate 0.02 --horizon 40000 --out \"" +
           out.string() + "\"";
  };
  auto sim_cmd = [&](const fs::path& out) {
    return cli +
           " simulate --algo baseline --algo spin --rate 0.02 --seed 3"
           " --horizon 30000 --threads 2 --out \"" + out.string() + "\"";
  };
  auto rep_cmd = [&](const fs::path& out) {
    return cli + " report-costs --seed 5 --out \"" + out.string() + "\"";
  };

  if (run_cmd(gen_cmd(root / "genA")) != 0 || run_cmd(gen_cmd(root / "genB")) != 0)
    return {false, "gen exited nonzero"};
  if (run_cmd(sim_cmd(root / "simA")) != 0 || run_cmd(sim_cmd(root / "simB")) != 0)
    return {false, "simulate exited nonzero"};
  if (run_cmd(rep_cmd(root / "repA.csv")) != 0 ||
      run_cmd(rep_cmd(root / "repB.csv")) != 0)
    return {false, "report-costs exited nonzero"};

  std::string why;
  if (!same_tree(root / "genA", root / "genB", why)) return {false, "gen: " + why};
  if (!same_tree(root / "simA", root / "simB", why)) return {false, "simulate: " + why};
  if (slurp(root / "repA.csv") != slurp(root / "repB.csv"))
    return {false, "report-costs differs"};
  if (slurp(root / "repA.csv").empty()) return {false, "report-costs wrote nothing"};
  fs::remove_all(root, ec);
  return {true, "gen, simulate and report-costs rerun byte-identical"};
}

CheckResult check_cost_report(const std::string& cli) {
  fs::path out = fs::temp_directory_path() / "sfcaas_acceptance_costs.csv";
  std::error_code ec;
  fs::remove(out, ec);
  if (run_cmd(cli + " report-costs --out \"" + out.string() + "\"") != 0)
    return {false, "report-costs exited nonzero"};
  std::string csv = slurp(out);
  fs::remove(out, ec);
  const std::string needle = "m3.16xlarge,3.2,64,256,192";
  bool found = csv.find(needle + "\n") != std::string::npos ||
               (csv.size() >= needle.size() &&
                csv.compare(csv.size() - needle.size(), needle.size(), needle) == 0);
  return {found, found ? "row " + needle + " present"
                       : "row " + needle + " missing"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_tests <path-to-sfcaas-cli>\n";
    return 64;
  }
  std::string cli = "\"" + std::string(argv[1]) + "\"";

  struct Entry {
    const char* title;
    CheckResult result;
  };
  std::vector<Entry> entries;
  entries.push_back({"exact solver matches brute-force enumeration",
                     check_oracle_equivalence()});
  entries.push_back({"heuristics are sound under simulation load",
                     check_heuristic_soundness()});
  entries.push_back({"heuristic costs bracket the optimum", check_optimality_gap()});
  entries.push_back({"spin maps more requests at the headline rate",
                     check_mapped_requests()});
  entries.push_back({"spin profit dominates across rates", check_profit_dominance()});
  entries.push_back({"acceptance ratio falls with load, spin on top",
                     check_acceptance_trend()});
  entries.push_back({"spin delay does not exceed baseline", check_delay_dominance()});
  entries.push_back({"translation sizing and bandwidth conservation",
                     check_translation_arithmetic()});
  entries.push_back({"reruns are byte-identical", check_determinism(cli)});
  entries.push_back({"cost report reproduces the reference row",
                     check_cost_report(cli)});

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (!e.result.pass) ++failures;
    std::cout << (e.result.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ": "
              << e.title << " (" << e.result.detail << ")\n";
  }
  std::cout.flush();
  return failures;
}
