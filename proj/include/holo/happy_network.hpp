#pragma once

// Networks of six-qubit perfect-tensor blocks: the block itself (prism
// graph state, every 3-qubit subset maximally entangled), preset layouts
// (single block, four-block ring with 12 boundary legs, eleven-block
// pentagon patch with 25 boundary legs), layout serialization, and the
// derivation of the sub-network induced by a bulk region for partial
// decoding.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "holo/contraction.hpp"
#include "holo/graphification.hpp"

namespace holo {

// The six-vertex prism: two triangles {0,1,2} x ... realized as the edge
// set below. Its graph state is absolutely maximally entangled: every
// bipartition into 3+3 qubits carries 3 bits of entanglement.
inline GraphState ame6_graph() {
  GraphState g(6);
  static constexpr std::pair<std::size_t, std::size_t> edges[] = {
      {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}};
  for (const auto& [u, v] : edges) g.set_edge(u, v, true);
  return g;
}

inline CheckMatrix ame6_block() { return graph_check(ame6_graph()); }

// A tensor network layout: per-tensor stabilizer blocks, bonds between
// legs, and the ordering/labeling of the free legs in the contracted
// output. `embedding` lists output positions in circular order for chord
// metrics (typically the boundary legs).
struct NetworkLayout {
  std::vector<CheckMatrix> blocks;
  std::vector<std::pair<LegRef, LegRef>> bonds;
  std::vector<LegRef> output_order;
  std::vector<std::string> names;       // one per output position
  std::vector<VertexRole> roles;        // one per output position
  std::vector<std::size_t> embedding;   // output positions on the circle
};

inline CheckMatrix build_network(const NetworkLayout& layout) {
  if (layout.names.size() != layout.output_order.size() ||
      layout.roles.size() != layout.output_order.size())
    throw error("layout: names/roles must match the output order");
  return contract_network(layout.blocks, layout.bonds, layout.output_order);
}

// Four blocks in a ring, one bulk leg each, 12 boundary legs in circular
// order. Encodes 4 logical qubits into 12.
inline NetworkLayout happy12_layout() {
  NetworkLayout layout;
  layout.blocks.assign(4, ame6_block());
  layout.bonds = {
      {{0, 4}, {1, 5}},
      {{1, 3}, {2, 2}},
      {{2, 1}, {3, 5}},
      {{3, 2}, {0, 5}},
  };
  for (std::size_t t = 0; t < 4; ++t) layout.output_order.push_back(LegRef{t, 0});
  static constexpr LegRef boundary[] = {
      {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 4},
      {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 3}, {3, 4}};
  for (const LegRef& leg : boundary) layout.output_order.push_back(leg);
  layout.names = {"bA", "bB", "bC", "bD"};
  layout.roles.assign(4, VertexRole::Bulk);
  for (std::size_t q = 1; q <= 12; ++q) {
    layout.names.push_back("q" + std::to_string(q));
    layout.roles.push_back(VertexRole::Boundary);
    layout.embedding.push_back(3 + q);
  }
  return layout;
}

// Eleven blocks tiling a pentagon patch: one central block, five middle
// blocks, five outer blocks; 11 bulk legs and 25 boundary legs.
inline NetworkLayout happy36_layout() {
  NetworkLayout layout;
  layout.blocks.assign(11, ame6_block());
  for (std::size_t i = 1; i <= 5; ++i) {
    layout.bonds.push_back({{0, i}, {i, 2}});
    layout.bonds.push_back({{i, 3}, {5 + i, 1}});
    layout.bonds.push_back({{i, 1}, {5 + (i == 1 ? 5 : i - 1), 5}});
  }
  for (std::size_t t = 0; t < 11; ++t) layout.output_order.push_back(LegRef{t, 0});
  for (std::size_t i = 1; i <= 5; ++i) {
    layout.output_order.push_back(LegRef{i, 4});
    layout.output_order.push_back(LegRef{i, 5});
    layout.output_order.push_back(LegRef{5 + i, 2});
    layout.output_order.push_back(LegRef{5 + i, 3});
    layout.output_order.push_back(LegRef{5 + i, 4});
  }
  layout.names = {"bP0"};
  for (std::size_t i = 1; i <= 5; ++i) layout.names.push_back("bE" + std::to_string(i));
  for (std::size_t i = 1; i <= 5; ++i) layout.names.push_back("bC" + std::to_string(i));
  layout.roles.assign(11, VertexRole::Bulk);
  for (std::size_t q = 1; q <= 25; ++q) {
    layout.names.push_back("q" + std::to_string(q));
    layout.roles.push_back(VertexRole::Boundary);
    layout.embedding.push_back(10 + q);
  }
  return layout;
}

// Single block, all six legs on the boundary.
inline NetworkLayout ame6_layout() {
  NetworkLayout layout;
  layout.blocks.assign(1, ame6_block());
  for (std::size_t l = 0; l < 6; ++l) {
    layout.output_order.push_back(LegRef{0, l});
    layout.names.push_back("q" + std::to_string(l + 1));
    layout.roles.push_back(VertexRole::Boundary);
    layout.embedding.push_back(l);
  }
  return layout;
}

inline NetworkLayout preset_layout(const std::string& name) {
  if (name == "ame6") return ame6_layout();
  if (name == "happy12") return happy12_layout();
  if (name == "happy36") return happy36_layout();
  throw error("unknown preset layout '" + name + "'");
}

// ---- region sub-networks ----

// A bulk region for partial decoding: the block indices it contains, and
// the retained boundary legs as indices into the full layout's boundary
// list (legs whose role is Boundary, in output order).
struct RegionSpec {
  std::vector<std::size_t> e_tensors;
  std::vector<std::size_t> de_positions;
};

// The sub-network a region induces. Output order: the region's bulk legs
// (full output order), then the cut legs (severed bond ends sorted by
// (tensor, leg), then region boundary legs left out of the retained set),
// then the retained boundary legs. `full_vertex_of` maps each sub output
// position to the corresponding full output position (npos for cut legs,
// which have no counterpart).
struct SubNetwork {
  NetworkLayout layout;
  std::vector<std::size_t> full_vertex_of;
  std::size_t bulk_count = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

inline SubNetwork region_sub_network(const NetworkLayout& full, const RegionSpec& region) {
  std::vector<bool> in_e(full.blocks.size(), false);
  for (std::size_t t : region.e_tensors) {
    if (t >= full.blocks.size()) throw error("region: tensor out of range");
    if (in_e[t]) throw error("region: duplicate tensor");
    in_e[t] = true;
  }
  std::vector<std::size_t> sub_index(full.blocks.size(), SubNetwork::npos);
  for (std::size_t s = 0; s < region.e_tensors.size(); ++s) sub_index[region.e_tensors[s]] = s;

  // Full boundary list: output positions with role Boundary, in order.
  std::vector<std::size_t> boundary_positions;
  for (std::size_t p = 0; p < full.output_order.size(); ++p)
    if (full.roles[p] == VertexRole::Boundary) boundary_positions.push_back(p);
  std::vector<bool> retained(boundary_positions.size(), false);
  for (std::size_t j : region.de_positions) {
    if (j >= boundary_positions.size()) throw error("region: boundary index out of range");
    if (retained[j]) throw error("region: duplicate boundary index");
    if (!in_e[full.output_order[boundary_positions[j]].tensor])
      throw error("region: retained boundary leg lies outside the region");
    retained[j] = true;
  }

  SubNetwork sub;
  for (std::size_t t : region.e_tensors) sub.layout.blocks.push_back(full.blocks[t]);
  for (const auto& [a, b] : full.bonds) {
    const bool ea = in_e[a.tensor], eb = in_e[b.tensor];
    if (ea && eb)
      sub.layout.bonds.push_back({LegRef{sub_index[a.tensor], a.leg}, LegRef{sub_index[b.tensor], b.leg}});
  }

  auto push = [&](const LegRef& full_leg, std::size_t full_pos, const std::string& name, VertexRole role) {
    sub.layout.output_order.push_back(LegRef{sub_index[full_leg.tensor], full_leg.leg});
    sub.layout.names.push_back(name);
    sub.layout.roles.push_back(role);
    sub.full_vertex_of.push_back(full_pos);
  };
  // Region bulk legs, in full output order.
  for (std::size_t p = 0; p < full.output_order.size(); ++p) {
    const LegRef& leg = full.output_order[p];
    if (full.roles[p] == VertexRole::Bulk && in_e[leg.tensor]) push(leg, p, full.names[p], VertexRole::Bulk);
  }
  // Cut legs: severed bond ends first (sorted), then dropped boundary legs.
  std::vector<LegRef> cut;
  for (const auto& [a, b] : full.bonds) {
    const bool ea = in_e[a.tensor], eb = in_e[b.tensor];
    if (ea && !eb) cut.push_back(a);
    if (eb && !ea) cut.push_back(b);
  }
  std::sort(cut.begin(), cut.end());
  for (std::size_t j = 0; j < boundary_positions.size(); ++j) {
    const LegRef& leg = full.output_order[boundary_positions[j]];
    if (!retained[j] && in_e[leg.tensor]) cut.push_back(leg);
  }
  for (std::size_t i = 0; i < cut.size(); ++i) {
    sub.layout.output_order.push_back(LegRef{sub_index[cut[i].tensor], cut[i].leg});
    sub.layout.names.push_back("cut" + std::to_string(i + 1));
    sub.layout.roles.push_back(VertexRole::Cut);
    sub.full_vertex_of.push_back(SubNetwork::npos);
  }
  sub.bulk_count = sub.layout.output_order.size();
  // Retained boundary legs, in the order given by the region.
  for (std::size_t j : region.de_positions) {
    const std::size_t p = boundary_positions[j];
    push(full.output_order[p], p, full.names[p], VertexRole::Boundary);
    sub.layout.embedding.push_back(sub.layout.output_order.size() - 1);
  }
  return sub;
}

// ---- serialization ----

inline nlohmann::json leg_to_json(const LegRef& leg) {
  return nlohmann::json::array({leg.tensor, leg.leg});
}

inline LegRef leg_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw error("layout: bad leg reference");
  return LegRef{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

inline nlohmann::json layout_to_json(const NetworkLayout& layout) {
  nlohmann::json j;
  j["version"] = 1;
  j["blocks"] = nlohmann::json::array();
  for (const auto& block : layout.blocks) j["blocks"].push_back(check_to_json(block));
  j["bonds"] = nlohmann::json::array();
  for (const auto& [a, b] : layout.bonds) j["bonds"].push_back(nlohmann::json::array({leg_to_json(a), leg_to_json(b)}));
  j["output_order"] = nlohmann::json::array();
  for (const auto& leg : layout.output_order) j["output_order"].push_back(leg_to_json(leg));
  j["names"] = layout.names;
  nlohmann::json roles = nlohmann::json::array();
  for (VertexRole role : layout.roles) roles.push_back(role_name(role));
  j["roles"] = roles;
  j["embedding"] = layout.embedding;
  return j;
}

inline NetworkLayout layout_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("version", 0) != 1) throw error("layout: unsupported format");
  NetworkLayout layout;
  for (const auto& block : j.at("blocks")) layout.blocks.push_back(check_from_json(block));
  for (const auto& bond : j.at("bonds")) {
    if (!bond.is_array() || bond.size() != 2) throw error("layout: bad bond");
    layout.bonds.push_back({leg_from_json(bond[0]), leg_from_json(bond[1])});
  }
  for (const auto& leg : j.at("output_order")) layout.output_order.push_back(leg_from_json(leg));
  layout.names = j.at("names").get<std::vector<std::string>>();
  for (const auto& role : j.at("roles")) layout.roles.push_back(role_from_name(role.get<std::string>()));
  layout.embedding = j.value("embedding", std::vector<std::size_t>{});
  if (layout.names.size() != layout.output_order.size() || layout.roles.size() != layout.output_order.size())
    throw error("layout: names/roles must match the output order");
  return layout;
}

inline nlohmann::json region_to_json(const RegionSpec& region) {
  nlohmann::json j;
  j["version"] = 1;
  j["e_tensors"] = region.e_tensors;
  j["de_positions"] = region.de_positions;
  return j;
}

inline RegionSpec region_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("version", 0) != 1) throw error("region: unsupported format");
  RegionSpec region;
  region.e_tensors = j.at("e_tensors").get<std::vector<std::size_t>>();
  region.de_positions = j.at("de_positions").get<std::vector<std::size_t>>();
  return region;
}

}  // namespace holo
