#include <doctest.h>

#include <string>

#include "sfcaas/catalog.hpp"
#include "sfcaas/errors.hpp"
#include "sfcaas/ilp.hpp"
#include "sfcaas/rng.hpp"

#include "support/small_instances.hpp"

using namespace sfcaas;

namespace {

IlpModel sample_model() {
  std::vector<PopNode> pops{{0, 4, 0, 0.02}, {1, 4, 1, 0.05}, {2, 4, 0, 0.01}};
  std::vector<PhysLink> links{
      {0, 1, 1000.0, 400.0, 10.0, 0.001},
      {1, 2, 1000.0, -1.0, 20.0, 0.002},
  };
  PhysicalNetwork net(std::move(pops), std::move(links));

  std::vector<VnfType> types{{0, "fw", 10000.0, true, 0.5, 0.01, 1.0}};
  std::vector<Flavor> flavors{{"micro", 1, 1.0, 0.0125, 1, 1.0}};
  Catalog catalog(std::move(types), std::move(flavors), CostModel{});

  SfcRequest r;
  r.id = 1;
  r.chain = {0};
  r.sources = {0};
  r.destination = 2;
  r.demand_pps = 17500.0;  // two instances, so sync links show up too
  r.delay_budget_ms = 1e9;

  static PhysicalNetwork net_keep = std::move(net);
  static Catalog catalog_keep = std::move(catalog);
  static VirtualTopology vt_keep = translate(r, catalog_keep);
  return build_model(net_keep, vt_keep, catalog_keep);
}

}  // namespace

TEST_CASE("export, parse, export round-trips byte for byte") {
  IlpModel m = sample_model();
  std::string text = export_model(m);
  IlpModel parsed = parse_model(text);
  CHECK(export_model(parsed) == text);

  CHECK(parsed.vars.size() == m.vars.size());
  CHECK(parsed.constraints.size() == m.constraints.size());
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    CHECK(parsed.vars[i].name == m.vars[i].name);
    CHECK(parsed.vars[i].objective == m.vars[i].objective);
  }
  for (std::size_t i = 0; i < m.constraints.size(); ++i) {
    CHECK(parsed.constraints[i].name == m.constraints[i].name);
    CHECK(parsed.constraints[i].sense == m.constraints[i].sense);
    CHECK(parsed.constraints[i].rhs == m.constraints[i].rhs);
    REQUIRE(parsed.constraints[i].terms.size() == m.constraints[i].terms.size());
    for (std::size_t t = 0; t < m.constraints[i].terms.size(); ++t) {
      CHECK(parsed.constraints[i].terms[t].var == m.constraints[i].terms[t].var);
      CHECK(parsed.constraints[i].terms[t].coeff == m.constraints[i].terms[t].coeff);
    }
  }
}

TEST_CASE("text has the expected sections and rows") {
  IlpModel m = sample_model();
  std::string text = export_model(m);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Binary") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  CHECK(text.find("pin_i") != std::string::npos);
  CHECK(text.find("place_i") != std::string::npos);
  CHECK(text.find("cap_p") != std::string::npos);
  CHECK(text.find("bw_e") != std::string::npos);
  CHECK(text.find("flow_l") != std::string::npos);
}

TEST_CASE("a model with no virtual links has no flow or bandwidth rows") {
  std::vector<PopNode> pops{{0, 4, 0, 0.02}, {1, 4, 0, 0.05}};
  std::vector<PhysLink> links{{0, 1, 1000.0, -1.0, 10.0, 0.001}};
  PhysicalNetwork net(std::move(pops), std::move(links));
  std::vector<VnfType> types{{0, "fw", 10000.0, false, 0.0, 0.0, 1.0}};
  std::vector<Flavor> flavors{{"micro", 1, 1.0, 0.0125, 1, 1.0}};
  Catalog catalog(std::move(types), std::move(flavors), CostModel{});

  VirtualTopology vt;
  vt.instances.push_back({0, InstanceRole::Vnf, 0, std::nullopt, 1});
  vt.stages = {{0}};
  vt.rebuild_index();

  std::string text = export_model(build_model(net, vt, catalog));
  CHECK(text.find("bw_e") == std::string::npos);
  CHECK(text.find("flow_l") == std::string::npos);
  CHECK(text.find("place_i0") != std::string::npos);
}

TEST_CASE("parsed models keep dimensions but cannot be solved") {
  IlpModel m = sample_model();
  IlpModel parsed = parse_model(export_model(m));
  CHECK(parsed.n_instances == m.n_instances);
  CHECK(parsed.n_pops == m.n_pops);
  CHECK(parsed.n_links == m.n_links);
  CHECK(parsed.n_edges == m.n_edges);
  CHECK(!parsed.solvable());
  CHECK_THROWS_AS(solve_exact(parsed), InvalidConfig);
}

TEST_CASE("garbage text is rejected with a parse error") {
  CHECK_THROWS_AS(parse_model(""), ParseError);
  CHECK_THROWS_AS(parse_model("this is not a program"), ParseError);
  CHECK_THROWS_AS(parse_model("Minimize\n obj: 3x +\nSubject To\nEnd\n"), ParseError);

  // a constraint referencing an undeclared variable
  IlpModel m = sample_model();
  std::string text = export_model(m);
  auto pos = text.find("x_0_0");
  REQUIRE(pos != std::string::npos);
  std::string broken = text;
  broken.replace(pos, 5, "x_9_9");
  CHECK_THROWS_AS(parse_model(broken), ParseError);
}

TEST_CASE("round-trip holds across random instances") {
  Rng rng(1234);
  for (int trial = 0; trial < 15; ++trial) {
    testgen::TinyInstance t = testgen::make_tiny(rng);
    std::string text = export_model(build_model(t.net, t.vt, t.catalog));
    CHECK(export_model(parse_model(text)) == text);
  }
}
