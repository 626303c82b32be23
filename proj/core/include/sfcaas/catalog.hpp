#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfcaas/net_model.hpp"

namespace sfcaas {

// A network function type. Capacity is measured in packets/s when the
// function runs on one micro instance; other flavors scale it by the
// flavor's capacity_scale (sub-linear in practice, see Catalog notes).
struct VnfType {
  int id = 0;
  std::string name;
  double capacity_pps_on_micro = 0.0;
  // State synchronization between same-type instances of one chain.
  bool sync_required = false;
  double sync_bandwidth_mbps = 0.0;   // per sync link
  double sync_rate_per_hour = 0.0;    // flat $/hour per sync link
  // Software licensing multiplier applied on top of the PoP price.
  double cost_multiplier = 1.0;
};

// A compute flavor from the provider price list. micro_equivalents is the
// number of slots the flavor occupies; capacity_scale is the measured
// throughput relative to micro for the same VNF.
struct Flavor {
  std::string name;
  int vcpu = 0;
  double memory_gib = 0.0;
  double price_per_hour = 0.0;
  int micro_equivalents = 1;
  double capacity_scale = 1.0;
};

struct CostModel {
  // Optional per-PoP price adjustment on top of PopNode::instance_price.
  std::map<int, double> pop_price_multiplier;
  double default_pop_multiplier = 1.0;
  // Revenue per placed instance is its deployment cost plus this margin.
  double profit_margin_per_instance_hour = 0.1;
};

enum class SyncTopology { Ring, Clique };

class Catalog {
 public:
  Catalog() = default;
  Catalog(std::vector<VnfType> vnfs, std::vector<Flavor> flavors, CostModel model);

  const std::vector<VnfType>& vnf_types() const { return vnfs_; }
  const std::vector<Flavor>& flavors() const { return flavors_; }
  const CostModel& cost_model() const { return model_; }
  CostModel& cost_model() { return model_; }

  const VnfType& vnf(int id) const;               // throws UnknownVnf
  const Flavor& flavor(const std::string&) const;  // throws UnknownFlavor
  bool has_flavor(const std::string& name) const;

  double pop_multiplier(int pop_id) const;

  SyncTopology sync_topology = SyncTopology::Ring;

 private:
  std::vector<VnfType> vnfs_;
  std::vector<Flavor> flavors_;
  CostModel model_;
};

// Packets/s the given VNF sustains on the given flavor.
double processing_capacity(const Catalog& catalog, int vnf_id,
                           const std::string& flavor_name);

// Hourly deployment cost of one micro instance of the VNF at the PoP:
// PoP price x PoP multiplier x VNF software multiplier.
double instance_cost(const Catalog& catalog, const PhysicalNetwork& net,
                     int vnf_id, int pop_id);

struct CostReportRow {
  std::string flavor;
  double price_per_hour = 0.0;
  int vcpu = 0;
  // How many micro instances the same money buys, and how many vCPUs those
  // micros have over this flavor.
  int micro_count = 0;
  int vcpu_delta = 0;
};

// One row per flavor except the micro reference itself, sorted by flavor
// name. micro_count uses the flavor named "micro" as the reference price.
std::vector<CostReportRow> cost_effectiveness_report(const Catalog& catalog);

// Price-list catalog with nine VNF types whose capacities are drawn
// uniformly from [2000, 12000] pps under the given seed.
Catalog default_catalog(std::uint64_t seed);

}  // namespace sfcaas
