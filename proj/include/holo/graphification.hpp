#pragma once

// Graph states and conversion of arbitrary pure stabilizer states to graph
// form using one Hadamard layer plus one Z layer, with the conversion
// recorded and independently verifiable.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "holo/symplectic.hpp"
#include "json.hpp"

namespace holo {

enum class VertexRole { Boundary, Bulk, Cut };

inline const char* role_name(VertexRole r) {
  switch (r) {
    case VertexRole::Boundary: return "boundary";
    case VertexRole::Bulk: return "bulk";
    case VertexRole::Cut: return "cut";
  }
  throw error("role_name: bad role");
}

inline VertexRole role_from_name(const std::string& s) {
  if (s == "boundary") return VertexRole::Boundary;
  if (s == "bulk") return VertexRole::Bulk;
  if (s == "cut") return VertexRole::Cut;
  throw error("role_from_name: unknown role '" + s + "'");
}

// Simple undirected graph on up to 64 vertices (adjacency bit rows), with
// per-vertex roles/names and an optional circular embedding (an ordered list
// of vertices laid out on a circle, used for chord-length metrics).
struct GraphState {
  std::size_t n = 0;
  std::vector<std::uint64_t> adj;
  std::vector<VertexRole> roles;
  std::vector<std::string> names;
  std::vector<std::size_t> embedding;

  GraphState() = default;
  explicit GraphState(std::size_t vertices) { reset(vertices); }

  void reset(std::size_t vertices) {
    if (vertices > 64) throw error("GraphState: at most 64 vertices supported");
    n = vertices;
    adj.assign(n, 0);
    roles.assign(n, VertexRole::Boundary);
    names.resize(n);
    for (std::size_t v = 0; v < n; ++v) names[v] = "v" + std::to_string(v);
    embedding.clear();
  }

  bool has_edge(std::size_t u, std::size_t v) const { return (adj[u] >> v) & 1u; }

  void set_edge(std::size_t u, std::size_t v, bool present) {
    if (u >= n || v >= n) throw error("GraphState: vertex out of range");
    if (u == v) throw error("GraphState: no self loops");
    const std::uint64_t bu = std::uint64_t{1} << u;
    const std::uint64_t bv = std::uint64_t{1} << v;
    if (present) {
      adj[u] |= bv;
      adj[v] |= bu;
    } else {
      adj[u] &= ~bv;
      adj[v] &= ~bu;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (std::size_t u = 0; u < n; ++u) total += static_cast<std::size_t>(std::popcount(adj[u]));
    return total / 2;
  }

  std::size_t degree(std::size_t v) const { return static_cast<std::size_t>(std::popcount(adj[v])); }

  bool operator==(const GraphState& other) const {
    return n == other.n && adj == other.adj;
  }
};

// Stabilizer generators of the graph state: row v = X_v Z^{N(v)}, + signs.
inline CheckMatrix graph_check(const GraphState& g) {
  CheckMatrix mat(g.n);
  for (std::size_t v = 0; v < g.n; ++v) {
    PauliRow row(g.n);
    row.x.set(v, true);
    for (std::size_t u = 0; u < g.n; ++u)
      if (g.has_edge(v, u)) row.z.set(u, true);
    mat.append(std::move(row));
  }
  return mat;
}

// Conversion circuit from an input state to a graph state: apply H on every
// qubit in hadamard_set, then Z on every qubit in z_set.
struct ConversionRecord {
  std::vector<std::size_t> hadamard_set;
  std::vector<std::size_t> z_set;
  bool operator==(const ConversionRecord&) const = default;
};

// Conjugate a check matrix by the record's gates (H layer, then Z layer).
inline CheckMatrix conversion_applied(CheckMatrix mat, const ConversionRecord& rec) {
  for (std::size_t q : rec.hadamard_set) conjugate_single_clifford(mat, SingleGate::H, q);
  for (std::size_t q : rec.z_set) conjugate_single_clifford(mat, SingleGate::Z, q);
  return mat;
}

// Convert a pure stabilizer state to a graph state. Returns the graph and
// the record mapping the input state to it. The optional column order
// selects which qubits become Hadamard candidates (the non-pivot columns of
// the X-block reduction); natural order by default.
//
// Throws when the state is not pure (rows != qubits) or when no H+Z
// conversion exists under the chosen order (a generator would need an odd
// number of Y letters, which only happens for states with complex
// amplitudes; every real-amplitude stabilizer state converts).
inline std::pair<GraphState, ConversionRecord> to_graph_state(const CheckMatrix& input,
                                                              const std::vector<std::size_t>& order = {}) {
  const std::size_t m = input.qubits;
  if (input.rows.size() != m) throw error("to_graph_state: pure state required");
  if (m > 64) throw error("to_graph_state: at most 64 qubits supported");
  CheckMatrix c = input;
  std::vector<std::size_t> cols = order;
  if (cols.empty()) {
    cols.resize(m);
    for (std::size_t q = 0; q < m; ++q) cols[q] = q;
  } else {
    std::vector<bool> seen(m, false);
    if (cols.size() != m) throw error("to_graph_state: order must list every qubit");
    for (std::size_t q : cols) {
      if (q >= m || seen[q]) throw error("to_graph_state: order must be a permutation");
      seen[q] = true;
    }
  }
  // Reduced row echelon form of the X block under the column order.
  std::vector<std::size_t> pivots;
  std::size_t r0 = 0;
  for (std::size_t col : cols) {
    std::size_t pivot = m;
    for (std::size_t r = r0; r < m; ++r) {
      if (c.rows[r].x.get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == m) continue;
    std::swap(c.rows[r0], c.rows[pivot]);
    for (std::size_t r = 0; r < m; ++r)
      if (r != r0 && c.rows[r].x.get(col)) c.mul_into(r, r0);
    pivots.push_back(col);
    ++r0;
  }
  const std::size_t p = pivots.size();
  std::vector<std::size_t> nonpiv;
  for (std::size_t col : cols)
    if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) nonpiv.push_back(col);
  // Bottom rows carry no X; their Z block on the non-pivot columns is full
  // rank. Reduce it to the identity.
  for (std::size_t k = 0; k < nonpiv.size(); ++k) {
    const std::size_t col = nonpiv[k];
    std::size_t pivot = m;
    for (std::size_t r = p + k; r < m; ++r) {
      if (c.rows[r].z.get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == m) throw error("to_graph_state: dependent generators (not a pure state)");
    std::swap(c.rows[p + k], c.rows[pivot]);
    for (std::size_t r = p; r < m; ++r)
      if (r != p + k && c.rows[r].z.get(col)) c.mul_into(r, p + k);
  }
  // Clear the top rows' Z entries on non-pivot columns using the bottom rows.
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < nonpiv.size(); ++k)
      if (c.rows[i].z.get(nonpiv[k])) c.mul_into(i, p + k);
  // A diagonal Z on a pivot column would mean a generator with an odd number
  // of Y letters; no H+Z conversion exists then.
  for (std::size_t i = 0; i < p; ++i)
    if (c.rows[i].z.get(pivots[i]))
      throw error("to_graph_state: no Hadamard+Z conversion under this order (odd Y count)");
  // Apply H on the non-pivot columns: swap x/z there. No generator carries Y
  // on those columns at this point, so no signs change.
  for (std::size_t col : nonpiv) {
    for (std::size_t r = 0; r < m; ++r) {
      const bool xb = c.rows[r].x.get(col);
      const bool zb = c.rows[r].z.get(col);
      c.rows[r].x.set(col, zb);
      c.rows[r].z.set(col, xb);
    }
  }
  // Rows now have X-part a permutation matrix: row_for_qubit.
  GraphState g(m);
  std::vector<bool> minus(m, false);
  std::vector<bool> assigned(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    const auto qs = c.rows[r].x.ones();
    if (qs.size() != 1) throw error("to_graph_state: internal X block not a permutation");
    const std::size_t qb = qs[0];
    if (assigned[qb]) throw error("to_graph_state: internal duplicate row");
    assigned[qb] = true;
    for (std::size_t u = 0; u < m; ++u)
      if (c.rows[r].z.get(u)) g.adj[qb] |= std::uint64_t{1} << u;
    minus[qb] = c.rows[r].sign;
  }
  for (std::size_t u = 0; u < m; ++u) {
    if ((g.adj[u] >> u) & 1u) throw error("to_graph_state: internal diagonal entry");
    for (std::size_t v = u + 1; v < m; ++v)
      if (g.has_edge(u, v) != ((g.adj[v] >> u) & 1u))
        throw error("to_graph_state: internal asymmetric adjacency");
  }
  ConversionRecord rec;
  rec.hadamard_set = nonpiv;
  std::sort(rec.hadamard_set.begin(), rec.hadamard_set.end());
  for (std::size_t qb = 0; qb < m; ++qb)
    if (minus[qb]) rec.z_set.push_back(qb);
  return {std::move(g), std::move(rec)};
}

// True iff conjugating the input state by the record's gates yields exactly
// the graph state's signed stabilizer group (all + signs on X_v Z^{N(v)}).
inline bool verify_conversion(const CheckMatrix& state, const GraphState& g, const ConversionRecord& rec) {
  if (state.qubits != g.n || state.rows.size() != g.n) return false;
  return same_group(conversion_applied(state, rec), graph_check(g));
}

// ---- serialization ----

inline std::string to_dot(const GraphState& g) {
  std::string out = "graph state {\n";
  for (std::size_t v = 0; v < g.n; ++v) {
    out += "  n" + std::to_string(v) + " [label=\"" + g.names[v] + "\" role=\"" + role_name(g.roles[v]) + "\"";
    switch (g.roles[v]) {
      case VertexRole::Bulk: out += " shape=doublecircle style=filled fillcolor=lightblue"; break;
      case VertexRole::Cut: out += " shape=diamond style=dashed"; break;
      case VertexRole::Boundary: out += " shape=circle"; break;
    }
    out += "];\n";
  }
  for (const auto& [u, v] : g.edges())
    out += "  n" + std::to_string(u) + " -- n" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

inline nlohmann::json graph_to_json(const GraphState& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  nlohmann::json roles = nlohmann::json::array();
  for (auto r : g.roles) roles.push_back(role_name(r));
  return nlohmann::json{{"version", 1}, {"vertices", g.n},     {"edges", edges},
                        {"roles", roles}, {"names", g.names}, {"embedding", g.embedding}};
}

inline GraphState graph_from_json(const nlohmann::json& j) {
  GraphState g(j.at("vertices").get<std::size_t>());
  for (const auto& e : j.at("edges")) g.set_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), true);
  if (j.contains("roles")) {
    const auto& roles = j.at("roles");
    if (roles.size() != g.n) throw error("graph_from_json: role count mismatch");
    for (std::size_t v = 0; v < g.n; ++v) g.roles[v] = role_from_name(roles[v].get<std::string>());
  }
  if (j.contains("names")) {
    const auto& names = j.at("names");
    if (names.size() != g.n) throw error("graph_from_json: name count mismatch");
    for (std::size_t v = 0; v < g.n; ++v) g.names[v] = names[v].get<std::string>();
  }
  if (j.contains("embedding"))
    g.embedding = j.at("embedding").get<std::vector<std::size_t>>();
  return g;
}

inline nlohmann::json record_to_json(const ConversionRecord& rec) {
  return nlohmann::json{{"version", 1}, {"hadamard_set", rec.hadamard_set}, {"z_set", rec.z_set}};
}

inline ConversionRecord record_from_json(const nlohmann::json& j) {
  ConversionRecord rec;
  rec.hadamard_set = j.at("hadamard_set").get<std::vector<std::size_t>>();
  rec.z_set = j.at("z_set").get<std::vector<std::size_t>>();
  return rec;
}

}  // namespace holo
