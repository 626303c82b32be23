#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sfcaas/catalog.hpp"
#include "sfcaas/embedding.hpp"
#include "sfcaas/net_model.hpp"
#include "sfcaas/request.hpp"
#include "sfcaas/sim.hpp"
#include "sfcaas/virtual_topology.hpp"

namespace sfcaas {

using json = nlohmann::json;

json topology_to_json(const PhysicalNetwork& net);
PhysicalNetwork topology_from_json(const json& j);

json catalog_to_json(const Catalog& c);
Catalog catalog_from_json(const json& j);

json request_to_json(const SfcRequest& r);
SfcRequest request_from_json(const json& j);

// Workload files are JSON lines, one request per line, in arrival order.
std::string workload_to_jsonl(const std::vector<SfcRequest>& reqs);
std::vector<SfcRequest> workload_from_jsonl(const std::string& text);

json vt_to_json(const VirtualTopology& vt);
VirtualTopology vt_from_json(const json& j);

json cost_to_json(const CostBreakdown& c);
json embedding_to_json(const Embedding& e);

std::string series_to_csv(const MetricsSeries& s);
json series_summary(const MetricsSeries& s);

// Shortest decimal form that round-trips the exact double. All CSV output
// goes through this, which keeps reruns byte-identical.
std::string format_number(double v);

// File helpers. Writers create parent directories; readers throw IoError
// with the path on failure, parse failures throw ParseError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace sfcaas
