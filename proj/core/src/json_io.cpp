#include "sfcaas/json_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sfcaas/errors.hpp"

namespace sfcaas {

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

const auto& fmt = format_number;

template <class Fn>
auto parsing(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json topology_to_json(const PhysicalNetwork& net) {
  json pops = json::array();
  for (const PopNode& p : net.pops()) {
    json jp{{"id", p.id}, {"slots", p.slot_capacity}, {"instance_price", p.instance_price}};
    if (p.used_slots > 0) jp["used_slots"] = p.used_slots;
    pops.push_back(std::move(jp));
  }
  json links = json::array();
  for (const PhysLink& l : net.links()) {
    json jl{{"a", l.a},
            {"b", l.b},
            {"bandwidth_mbps", l.bandwidth_capacity},
            {"delay_ms", l.propagation_delay_ms},
            {"price_per_mbps_hour", l.bandwidth_price}};
    if (l.residual_bandwidth != l.bandwidth_capacity)
      jl["residual_bandwidth_mbps"] = l.residual_bandwidth;
    links.push_back(std::move(jl));
  }
  return json{{"pops", std::move(pops)}, {"links", std::move(links)}};
}

PhysicalNetwork topology_from_json(const json& j) {
  return parsing("topology", [&]() {
    std::vector<PopNode> pops;
    for (const json& jp : j.at("pops")) {
      PopNode p;
      p.id = jp.at("id").get<int>();
      p.slot_capacity = jp.at("slots").get<int>();
      p.used_slots = jp.value("used_slots", 0);
      p.instance_price = jp.at("instance_price").get<double>();
      pops.push_back(p);
    }
    std::vector<PhysLink> links;
    for (const json& jl : j.at("links")) {
      PhysLink l;
      l.a = jl.at("a").get<int>();
      l.b = jl.at("b").get<int>();
      l.bandwidth_capacity = jl.at("bandwidth_mbps").get<double>();
      l.residual_bandwidth = jl.value("residual_bandwidth_mbps", -1.0);
      l.propagation_delay_ms = jl.at("delay_ms").get<double>();
      l.bandwidth_price = jl.at("price_per_mbps_hour").get<double>();
      links.push_back(l);
    }
    return PhysicalNetwork(std::move(pops), std::move(links));
  });
}

json catalog_to_json(const Catalog& c) {
  json vnfs = json::array();
  for (const VnfType& v : c.vnf_types()) {
    vnfs.push_back(json{{"id", v.id},
                        {"name", v.name},
                        {"capacity_pps_on_micro", v.capacity_pps_on_micro},
                        {"sync_required", v.sync_required},
                        {"sync_bandwidth_mbps", v.sync_bandwidth_mbps},
                        {"sync_rate_per_hour", v.sync_rate_per_hour},
                        {"cost_multiplier", v.cost_multiplier}});
  }
  json flavors = json::array();
  for (const Flavor& f : c.flavors()) {
    flavors.push_back(json{{"name", f.name},
                           {"vcpu", f.vcpu},
                           {"memory_gib", f.memory_gib},
                           {"price_per_hour", f.price_per_hour},
                           {"micro_equivalents", f.micro_equivalents},
                           {"capacity_scale", f.capacity_scale}});
  }
  json by_pop = json::object();
  for (const auto& [pop, mult] : c.cost_model().pop_price_multiplier)
    by_pop[std::to_string(pop)] = mult;
  json multipliers{{"default", c.cost_model().default_pop_multiplier},
                   {"by_pop", std::move(by_pop)}};
  return json{{"vnf_types", std::move(vnfs)},
              {"flavors", std::move(flavors)},
              {"multipliers", std::move(multipliers)},
              {"profit_margin_per_instance_hour",
               c.cost_model().profit_margin_per_instance_hour},
              {"sync_topology",
               c.sync_topology == SyncTopology::Ring ? "ring" : "clique"}};
}

Catalog catalog_from_json(const json& j) {
  return parsing("catalog", [&]() {
    std::vector<VnfType> vnfs;
    for (const json& jv : j.at("vnf_types")) {
      VnfType v;
      v.id = jv.at("id").get<int>();
      v.name = jv.at("name").get<std::string>();
      v.capacity_pps_on_micro = jv.at("capacity_pps_on_micro").get<double>();
      v.sync_required = jv.at("sync_required").get<bool>();
      v.sync_bandwidth_mbps = jv.value("sync_bandwidth_mbps", 0.0);
      v.sync_rate_per_hour = jv.value("sync_rate_per_hour", 0.0);
      v.cost_multiplier = jv.value("cost_multiplier", 1.0);
      vnfs.push_back(std::move(v));
    }
    std::vector<Flavor> flavors;
    for (const json& jf : j.at("flavors")) {
      Flavor f;
      f.name = jf.at("name").get<std::string>();
      f.vcpu = jf.at("vcpu").get<int>();
      f.memory_gib = jf.at("memory_gib").get<double>();
      f.price_per_hour = jf.at("price_per_hour").get<double>();
      f.micro_equivalents = jf.value("micro_equivalents", 1);
      f.capacity_scale = jf.value("capacity_scale", 1.0);
      flavors.push_back(std::move(f));
    }
    CostModel model;
    if (j.contains("multipliers")) {
      const json& jm = j.at("multipliers");
      model.default_pop_multiplier = jm.value("default", 1.0);
      if (jm.contains("by_pop"))
        for (auto it = jm.at("by_pop").begin(); it != jm.at("by_pop").end(); ++it)
          model.pop_price_multiplier[std::stoi(it.key())] = it.value().get<double>();
    }
    model.profit_margin_per_instance_hour =
        j.value("profit_margin_per_instance_hour", 0.1);
    Catalog c(std::move(vnfs), std::move(flavors), std::move(model));
    std::string sync = j.value("sync_topology", "ring");
    if (sync == "ring")
      c.sync_topology = SyncTopology::Ring;
    else if (sync == "clique")
      c.sync_topology = SyncTopology::Clique;
    else
      throw ParseError("catalog: unknown sync_topology: " + sync);
    return c;
  });
}

json request_to_json(const SfcRequest& r) {
  return json{{"id", r.id},
              {"chain", r.chain},
              {"sources", r.sources},
              {"destination", r.destination},
              {"demand_pps", r.demand_pps},
              {"packet_size_bytes", r.packet_size_bytes},
              {"arrival_time", r.arrival_time_s},
              {"lifetime", r.lifetime_s},
              {"delay_budget_ms", r.delay_budget_ms}};
}

SfcRequest request_from_json(const json& j) {
  return parsing("request", [&]() {
    SfcRequest r;
    r.id = j.at("id").get<int>();
    r.chain = j.at("chain").get<std::vector<int>>();
    r.sources = j.at("sources").get<std::vector<int>>();
    r.destination = j.at("destination").get<int>();
    r.demand_pps = j.at("demand_pps").get<double>();
    r.packet_size_bytes = j.value("packet_size_bytes", 1000);
    r.arrival_time_s = j.at("arrival_time").get<double>();
    r.lifetime_s = j.at("lifetime").get<double>();
    r.delay_budget_ms = j.at("delay_budget_ms").get<double>();
    return r;
  });
}

std::string workload_to_jsonl(const std::vector<SfcRequest>& reqs) {
  std::string out;
  for (const SfcRequest& r : reqs) {
    out += request_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<SfcRequest> workload_from_jsonl(const std::string& text) {
  std::vector<SfcRequest> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(request_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError("workload line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

json vt_to_json(const VirtualTopology& vt) {
  json instances = json::array();
  for (const VnfInstance& inst : vt.instances) {
    json ji{{"id", inst.id},
            {"role", inst.role == InstanceRole::Vnf      ? "vnf"
                     : inst.role == InstanceRole::Source ? "source"
                                                         : "dest"},
            {"slots", inst.slots}};
    if (inst.role == InstanceRole::Vnf) ji["vnf_type"] = inst.vnf_type;
    if (inst.pinned_pop) ji["pinned_pop"] = *inst.pinned_pop;
    instances.push_back(std::move(ji));
  }
  json links = json::array();
  for (const VirtualLink& l : vt.links)
    links.push_back(json{{"id", l.id},
                         {"i", l.i},
                         {"j", l.j},
                         {"bandwidth_mbps", l.bandwidth_mbps},
                         {"is_sync", l.is_sync}});
  return json{{"request_id", vt.request_id},
              {"demand_pps", vt.demand_pps},
              {"delay_budget_ms", vt.delay_budget_ms},
              {"instances", std::move(instances)},
              {"links", std::move(links)},
              {"stages", vt.stages}};
}

VirtualTopology vt_from_json(const json& j) {
  return parsing("virtual topology", [&]() {
    VirtualTopology vt;
    vt.request_id = j.value("request_id", -1);
    vt.demand_pps = j.value("demand_pps", 0.0);
    vt.delay_budget_ms = j.value("delay_budget_ms", 0.0);
    for (const json& ji : j.at("instances")) {
      VnfInstance inst;
      inst.id = ji.at("id").get<int>();
      std::string role = ji.at("role").get<std::string>();
      if (role == "vnf")
        inst.role = InstanceRole::Vnf;
      else if (role == "source")
        inst.role = InstanceRole::Source;
      else if (role == "dest")
        inst.role = InstanceRole::Destination;
      else
        throw ParseError("virtual topology: unknown role: " + role);
      inst.vnf_type = ji.value("vnf_type", -1);
      if (ji.contains("pinned_pop") && !ji.at("pinned_pop").is_null())
        inst.pinned_pop = ji.at("pinned_pop").get<int>();
      inst.slots = ji.value("slots", inst.endpoint() ? 0 : 1);
      vt.instances.push_back(inst);
    }
    for (const json& jl : j.at("links")) {
      VirtualLink l;
      l.id = jl.at("id").get<int>();
      l.i = jl.at("i").get<int>();
      l.j = jl.at("j").get<int>();
      l.bandwidth_mbps = jl.at("bandwidth_mbps").get<double>();
      l.is_sync = jl.value("is_sync", false);
      vt.links.push_back(l);
    }
    vt.stages = j.at("stages").get<std::vector<std::vector<int>>>();
    vt.rebuild_index();
    return vt;
  });
}

json cost_to_json(const CostBreakdown& c) {
  return json{{"instance_cost", c.instance_cost},
              {"data_bandwidth_cost", c.data_bandwidth_cost},
              {"sync_bandwidth_cost", c.sync_bandwidth_cost},
              {"flat_sync_cost", c.flat_sync_cost},
              {"total", c.total},
              {"revenue", c.revenue},
              {"profit", c.profit}};
}

json embedding_to_json(const Embedding& e) {
  return json{{"placement", e.placement},
              {"routing", e.routes},
              {"cost_breakdown", cost_to_json(e.cost)}};
}

std::string series_to_csv(const MetricsSeries& s) {
  std::string out = "t_s,arrived,accepted,rejected,utilization,cumulative_profit,mean_e2e_delay_ms\n";
  for (const MetricsSample& m : s.samples) {
    out += fmt(m.t_s);
    out += ',';
    out += std::to_string(m.arrived);
    out += ',';
    out += std::to_string(m.accepted);
    out += ',';
    out += std::to_string(m.rejected);
    out += ',';
    out += fmt(m.utilization);
    out += ',';
    out += fmt(m.cumulative_profit);
    out += ',';
    out += fmt(m.mean_e2e_delay_ms);
    out += '\n';
  }
  return out;
}

json series_summary(const MetricsSeries& s) {
  json reasons = json::object();
  for (const auto& [reason, count] : s.reject_reasons) reasons[reason] = count;
  return json{{"arrived", s.arrived},
              {"accepted", s.accepted},
              {"rejected", s.rejected},
              {"acceptance_ratio", s.acceptance_ratio()},
              {"total_profit", s.total_profit},
              {"peak_utilization", s.peak_utilization},
              {"mean_e2e_delay_ms", s.mean_e2e_delay_ms()},
              {"reject_reasons", std::move(reasons)}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

json load_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace sfcaas
