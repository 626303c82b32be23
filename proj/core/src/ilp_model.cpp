#include "sfcaas/ilp.hpp"

#include <string>

#include "sfcaas/errors.hpp"

namespace sfcaas {

IlpModel build_model(const PhysicalNetwork& net, const VirtualTopology& vt,
                     const Catalog& catalog) {
  for (const VnfInstance& inst : vt.instances)
    if (inst.endpoint() && !inst.pinned_pop)
      throw UnpinnedEndpoint("instance " + std::to_string(inst.id) +
                             " is an endpoint without a pin");

  IlpModel m;
  m.n_instances = static_cast<int>(vt.instances.size());
  m.n_pops = net.pop_count();
  m.n_links = static_cast<int>(vt.links.size());
  m.n_edges = static_cast<int>(net.links().size());
  m.net = &net;
  m.vt = &vt;
  m.catalog = &catalog;

  m.vars.reserve(static_cast<std::size_t>(m.n_instances) * m.n_pops +
                 static_cast<std::size_t>(m.n_links) * m.n_edges * 2);
  for (const VnfInstance& inst : vt.instances)
    for (int p = 0; p < m.n_pops; ++p) {
      IlpVariable v;
      v.name = "x_" + std::to_string(inst.id) + "_" + std::to_string(p);
      v.objective =
          inst.endpoint() ? 0.0 : instance_cost(catalog, net, inst.vnf_type, p);
      m.vars.push_back(v);
    }
  for (const VirtualLink& l : vt.links)
    for (int e = 0; e < m.n_edges; ++e) {
      const PhysLink& pl = net.links()[e];
      for (int dir = 0; dir < 2; ++dir) {
        IlpVariable v;
        int from = dir == 0 ? pl.a : pl.b;
        int to = dir == 0 ? pl.b : pl.a;
        v.name = "y_" + std::to_string(l.id) + "_" + std::to_string(from) + "_" +
                 std::to_string(to);
        v.objective = l.bandwidth_mbps * pl.bandwidth_price;
        m.vars.push_back(v);
      }
    }

  for (const VnfInstance& inst : vt.instances)
    if (inst.pinned_pop) {
      IlpConstraint c;
      c.name = "pin_i" + std::to_string(inst.id);
      c.terms.push_back({m.x_index(inst.id, *inst.pinned_pop), 1.0});
      c.sense = Sense::Ge;
      c.rhs = 1.0;
      m.constraints.push_back(c);
    }

  for (const VnfInstance& inst : vt.instances) {
    IlpConstraint c;
    c.name = "place_i" + std::to_string(inst.id);
    for (int p = 0; p < m.n_pops; ++p) c.terms.push_back({m.x_index(inst.id, p), 1.0});
    c.sense = Sense::Eq;
    c.rhs = 1.0;
    m.constraints.push_back(c);
  }

  for (int p = 0; p < m.n_pops; ++p) {
    IlpConstraint c;
    c.name = "cap_p" + std::to_string(p);
    for (const VnfInstance& inst : vt.instances)
      if (inst.slots > 0)
        c.terms.push_back({m.x_index(inst.id, p), static_cast<double>(inst.slots)});
    c.sense = Sense::Le;
    c.rhs = static_cast<double>(net.free_slots(p));
    m.slot_rhs.push_back(net.free_slots(p));
    if (!c.terms.empty()) m.constraints.push_back(c);
  }

  for (int e = 0; e < m.n_edges; ++e) {
    IlpConstraint c;
    c.name = "bw_e" + std::to_string(e);
    for (const VirtualLink& l : vt.links) {
      c.terms.push_back({m.y_index(l.id, e, 0), l.bandwidth_mbps});
      c.terms.push_back({m.y_index(l.id, e, 1), l.bandwidth_mbps});
    }
    c.sense = Sense::Le;
    c.rhs = net.residual_bandwidth(e);
    m.bw_rhs_units.push_back(bw::units(net.residual_bandwidth(e)));
    if (!c.terms.empty()) m.constraints.push_back(c);
  }

  // Flow conservation per virtual link and pop: net outflow at a pop equals
  // +1 at the link's tail placement, -1 at its head placement, 0 elsewhere;
  // with binary variables this forces a contiguous physical route.
  for (const VirtualLink& l : vt.links)
    for (int p = 0; p < m.n_pops; ++p) {
      IlpConstraint c;
      c.name = "flow_l" + std::to_string(l.id) + "_p" + std::to_string(p);
      for (auto [v, e] : net.neighbors(p)) {
        const PhysLink& pl = net.links()[e];
        int out_dir = pl.a == p ? 0 : 1;
        c.terms.push_back({m.y_index(l.id, e, out_dir), 1.0});
        c.terms.push_back({m.y_index(l.id, e, 1 - out_dir), -1.0});
      }
      c.terms.push_back({m.x_index(l.i, p), -1.0});
      c.terms.push_back({m.x_index(l.j, p), 1.0});
      c.sense = Sense::Eq;
      c.rhs = 0.0;
      m.constraints.push_back(c);
    }

  return m;
}

}  // namespace sfcaas
