#include "sfcaas/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sfcaas/errors.hpp"

namespace sfcaas {

Catalog::Catalog(std::vector<VnfType> vnfs, std::vector<Flavor> flavors,
                 CostModel model)
    : vnfs_(std::move(vnfs)), flavors_(std::move(flavors)), model_(std::move(model)) {
  std::set<int> ids;
  for (const VnfType& v : vnfs_) {
    if (!ids.insert(v.id).second)
      throw InvalidConfig("duplicate vnf id " + std::to_string(v.id));
    if (v.capacity_pps_on_micro <= 0)
      throw ZeroCapacity("vnf " + v.name + " has non-positive capacity");
    if (!v.sync_required && (v.sync_bandwidth_mbps != 0 || v.sync_rate_per_hour != 0))
      throw InvalidConfig("vnf " + v.name + " has sync parameters but sync disabled");
  }
  std::set<std::string> names;
  for (const Flavor& f : flavors_) {
    if (!names.insert(f.name).second)
      throw InvalidConfig("duplicate flavor " + f.name);
    if (f.price_per_hour < 0 || f.micro_equivalents < 1 || f.capacity_scale <= 0)
      throw InvalidConfig("flavor " + f.name + " has invalid attributes");
  }
}

const VnfType& Catalog::vnf(int id) const {
  for (const VnfType& v : vnfs_)
    if (v.id == id) return v;
  throw UnknownVnf("no vnf type with id " + std::to_string(id));
}

const Flavor& Catalog::flavor(const std::string& name) const {
  for (const Flavor& f : flavors_)
    if (f.name == name) return f;
  throw UnknownFlavor("no flavor named " + name);
}

bool Catalog::has_flavor(const std::string& name) const {
  for (const Flavor& f : flavors_)
    if (f.name == name) return true;
  return false;
}

double Catalog::pop_multiplier(int pop_id) const {
  auto it = model_.pop_price_multiplier.find(pop_id);
  return it == model_.pop_price_multiplier.end() ? model_.default_pop_multiplier
                                                 : it->second;
}

double processing_capacity(const Catalog& catalog, int vnf_id,
                           const std::string& flavor_name) {
  const VnfType& v = catalog.vnf(vnf_id);
  const Flavor& f = catalog.flavor(flavor_name);
  return v.capacity_pps_on_micro * f.capacity_scale;
}

double instance_cost(const Catalog& catalog, const PhysicalNetwork& net,
                     int vnf_id, int pop_id) {
  const VnfType& v = catalog.vnf(vnf_id);
  const PopNode& p = net.pop(pop_id);
  return p.instance_price * catalog.pop_multiplier(pop_id) * v.cost_multiplier;
}

std::vector<CostReportRow> cost_effectiveness_report(const Catalog& catalog) {
  const Flavor& micro = catalog.flavor("micro");
  if (micro.price_per_hour <= 0)
    throw InvalidConfig("micro flavor needs a positive price");
  std::vector<CostReportRow> rows;
  for (const Flavor& f : catalog.flavors()) {
    if (f.name == micro.name) continue;  // comparing micro to itself says nothing
    CostReportRow r;
    r.flavor = f.name;
    r.price_per_hour = f.price_per_hour;
    r.vcpu = f.vcpu;
    r.micro_count = static_cast<int>(std::floor(f.price_per_hour / micro.price_per_hour));
    r.vcpu_delta = r.micro_count - f.vcpu;
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end(),
            [](const CostReportRow& x, const CostReportRow& y) { return x.flavor < y.flavor; });
  return rows;
}

Catalog default_catalog(std::uint64_t seed) {
  Rng rng = Rng(seed).substream("catalog");

  const char* names[9] = {"firewall",    "ids",   "nat",  "load_balancer",
                          "proxy",       "dpi",   "vpn_gateway",
                          "cache",       "traffic_shaper"};
  std::vector<VnfType> vnfs;
  for (int i = 0; i < 9; ++i) {
    VnfType v;
    v.id = i;
    v.name = names[i];
    v.capacity_pps_on_micro = static_cast<double>(rng.uniform_int(2000, 12000));
    v.sync_required = true;
    v.sync_bandwidth_mbps = 1.0;
    v.sync_rate_per_hour = 0.01 * (i + 1);
    vnfs.push_back(v);
  }

  // The t2 line plus the largest m3; prices in $/hour, throughput scale
  // relative to micro is sub-linear in vCPUs (measured curves flatten out).
  std::vector<Flavor> flavors = {
      {"micro", 1, 1.0, 0.0125, 1, 1.0},
      {"small", 1, 2.0, 0.025, 2, 1.0},
      {"medium", 2, 4.0, 0.05, 4, 1.74},
      {"large", 2, 8.0, 0.1, 8, 1.74},
      {"xlarge", 4, 16.0, 0.2, 16, 3.03},
      {"2xlarge", 8, 32.0, 0.4, 32, 5.28},
      {"m3.16xlarge", 64, 256.0, 3.2, 256, 27.86},
  };

  CostModel model;
  model.profit_margin_per_instance_hour = 0.1;
  return Catalog(std::move(vnfs), std::move(flavors), std::move(model));
}

}  // namespace sfcaas
