#pragma once

// Graph states read as codes: a bulk/boundary vertex partition turns the
// graph state into an encoding isometry from bulk to boundary. This header
// derives the code-space stabilizer generators, logical X/Z representatives
// with exact signs, and weight-reduced representatives.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "holo/graphification.hpp"

namespace holo {

// A graph state on k + n vertices with a chosen bulk (k logical inputs) and
// boundary (n physical outputs) split. Vertex roles on the graph are kept in
// sync with the partition.
struct GraphCode {
  GraphState graph;
  std::vector<std::size_t> bulk;
  std::vector<std::size_t> boundary;

  std::size_t k() const { return bulk.size(); }
  std::size_t n() const { return boundary.size(); }
};

// Rows of the bulk-boundary adjacency block B (one per bulk vertex, columns
// indexed by boundary position).
inline std::vector<BitVec> bulk_boundary_block(const GraphCode& code) {
  std::vector<BitVec> rows;
  rows.reserve(code.k());
  for (std::size_t b : code.bulk) {
    BitVec row(code.n());
    for (std::size_t t = 0; t < code.n(); ++t)
      if (code.graph.has_edge(b, code.boundary[t])) row.set(t, true);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Partition a graph state's vertices into bulk (given) and boundary (the
// rest, ascending). Requires the bulk-boundary block to have full GF(2) rank
// (the graph state is then maximally entangled across the split and encodes
// k logical qubits). Cut-role vertices may be listed as bulk.
inline GraphCode partition(GraphState g, std::vector<std::size_t> bulk) {
  std::vector<bool> is_bulk(g.n, false);
  for (std::size_t v : bulk) {
    if (v >= g.n) throw error("partition: bulk vertex out of range");
    if (is_bulk[v]) throw error("partition: duplicate bulk vertex");
    is_bulk[v] = true;
  }
  GraphCode code;
  code.bulk = std::move(bulk);
  for (std::size_t v = 0; v < g.n; ++v)
    if (!is_bulk[v]) code.boundary.push_back(v);
  for (std::size_t v = 0; v < g.n; ++v) {
    if (!is_bulk[v])
      g.roles[v] = VertexRole::Boundary;
    else if (g.roles[v] != VertexRole::Cut)
      g.roles[v] = VertexRole::Bulk;
  }
  code.graph = std::move(g);
  const std::size_t rank = gf2_rank(bulk_boundary_block(code));
  if (rank != code.k())
    throw error("partition: bulk-boundary block rank " + std::to_string(rank) + " < k = " +
                std::to_string(code.k()));
  return code;
}

// Boundary-boundary edges (vertex pairs, u < v): the CZ pattern that turns
// |+>^n into the logical all-zero code state.
inline std::vector<std::pair<std::size_t, std::size_t>> logical_zero_edges(const GraphCode& code) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < code.n(); ++s)
    for (std::size_t t = s + 1; t < code.n(); ++t)
      if (code.graph.has_edge(code.boundary[s], code.boundary[t]))
        out.emplace_back(code.boundary[s], code.boundary[t]);
  return out;
}

// Logical operators and code-space generators, all on the n boundary qubits
// (columns ordered by boundary position).
struct LogicalSet {
  std::size_t n = 0;
  std::size_t k = 0;
  CheckMatrix generators;             // n - k rows
  std::vector<PauliRow> logical_z;    // k rows
  std::vector<PauliRow> logical_x;    // k rows
};

// Logical X representatives: X-bar_i = Z^{B_i} on the boundary, + sign.
inline std::vector<PauliRow> logical_x(const GraphCode& code) {
  const auto B = bulk_boundary_block(code);
  std::vector<PauliRow> out;
  out.reserve(code.k());
  for (std::size_t i = 0; i < code.k(); ++i) out.push_back(PauliRow(BitVec(code.n()), B[i], false));
  return out;
}

// Derive code-space generators and logical Z/X representatives with exact
// signs from the graph adjacency. Boundary vertex u contributes the pattern
// r_u = X_u Z^{N(u) cap boundary}; logical Z-bar and the generators are
// sign-exact products of these patterns selected by GF(2) elimination
// against the bulk-boundary block.
inline LogicalSet extract_logicals(const GraphCode& code) {
  const std::size_t n = code.n(), k = code.k();
  const auto B = bulk_boundary_block(code);
  if (gf2_rank(B) != k) throw error("extract_logicals: bulk-boundary block must have full rank");
  // Greedy leftmost-independent boundary columns of B.
  std::vector<std::size_t> cols2;
  {
    std::vector<BitVec> chosen;
    for (std::size_t col = 0; col < n && cols2.size() < k; ++col) {
      BitVec column(k);
      for (std::size_t i = 0; i < k; ++i) column.set(i, B[i].get(col));
      std::vector<BitVec> cand = chosen;
      cand.push_back(column);
      if (gf2_rank(cand) == cand.size()) {
        chosen.push_back(std::move(column));
        cols2.push_back(col);
      }
    }
  }
  std::vector<std::size_t> cols1;
  for (std::size_t col = 0; col < n; ++col)
    if (std::find(cols2.begin(), cols2.end(), col) == cols2.end()) cols1.push_back(col);
  // M = (B2^T)^-1 over GF(2); C = B1^T M.
  std::vector<BitVec> b2t;  // k x k, row l = column cols2[l] of B
  for (std::size_t l = 0; l < k; ++l) {
    BitVec row(k);
    for (std::size_t i = 0; i < k; ++i) row.set(i, B[i].get(cols2[l]));
    b2t.push_back(std::move(row));
  }
  const auto M = gf2_invert(b2t);
  auto r_row = [&](std::size_t u) {
    PauliRow row(n);
    row.x.set(u, true);
    for (std::size_t t = 0; t < n; ++t)
      if (code.graph.has_edge(code.boundary[u], code.boundary[t])) row.z.set(t, true);
    return row;
  };
  LogicalSet set;
  set.n = n;
  set.k = k;
  for (std::size_t i = 0; i < k; ++i) {
    PauliRow prod(n);
    for (std::size_t l = 0; l < k; ++l)
      if (M[i].get(l)) prod = multiply(prod, r_row(cols2[l]));
    set.logical_z.push_back(std::move(prod));
  }
  set.generators = CheckMatrix(n);
  for (std::size_t u : cols1) {
    PauliRow prod = r_row(u);
    // C[idx][l] = sum_i B1^T[idx][i] M[i][l] = parity of <column u of B, column l of M>.
    for (std::size_t l = 0; l < k; ++l) {
      bool bit = false;
      for (std::size_t i = 0; i < k; ++i) bit ^= B[i].get(u) && M[i].get(l);
      if (bit) prod = multiply(prod, r_row(cols2[l]));
    }
    set.generators.append(std::move(prod));
  }
  set.logical_x = logical_x(code);
  return set;
}

// First violated relation among the defining properties of a logical set
// (empty when all hold): generators pairwise commute and are independent;
// generators commute with all logicals; X-bar_i / Z-bar_j commute for i != j
// and anticommute for i == j; logicals pairwise commute among themselves;
// no logical lies in the generated stabilizer group.
inline std::string logical_set_problem(const LogicalSet& set) {
  const auto& gens = set.generators.rows;
  if (gens.size() != set.n - set.k) return "generator count != n - k";
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (!commutes(gens[a], gens[b])) return "generators do not commute";
  if (gf2_rank(symplectic_bits(set.generators)) != gens.size()) return "generators dependent";
  for (const auto& rows : {set.logical_z, set.logical_x}) {
    if (rows.size() != set.k) return "logical count != k";
    for (const auto& l : rows)
      for (const auto& g : gens)
        if (!commutes(l, g)) return "logical does not commute with a generator";
  }
  for (std::size_t i = 0; i < set.k; ++i)
    for (std::size_t j = 0; j < set.k; ++j) {
      const bool c = commutes(set.logical_x[i], set.logical_z[j]);
      if (i == j && c) return "X-bar and Z-bar of one logical qubit commute";
      if (i != j && !c) return "X-bar and Z-bar of different logical qubits anticommute";
    }
  for (const auto& rows : {set.logical_z, set.logical_x})
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = a + 1; b < rows.size(); ++b)
        if (!commutes(rows[a], rows[b])) return "logicals of one species do not commute";
  for (const auto& rows : {set.logical_z, set.logical_x})
    for (const auto& l : rows)
      if (sign_in_group(set.generators, l)) return "logical lies in the stabilizer group";
  return {};
}

// Weight reduction result; exhaustive=false means the group was too large
// for full coset enumeration and a greedy descent was used instead.
struct ReducedLogicalSet {
  LogicalSet set;
  bool exhaustive = true;
};

namespace detail {

// Deterministic order: weight first, then the serialized string (the sign
// character participates, so '+...' precedes '-...' at equal pattern).
inline bool weight_lex_less(const PauliRow& a, const PauliRow& b) {
  const std::size_t wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  return to_string(a) < to_string(b);
}

}  // namespace detail

// Multiply every logical representative by stabilizer elements to minimize
// weight (ties broken by serialized string), and replace the generators by a
// minimal-weight generating set chosen greedily in the same order. With g
// generators the full 2^g coset is searched when g <= exhaustive_limit;
// otherwise a greedy single-generator descent runs and the result is
// flagged. Commutation relations are preserved exactly.
inline ReducedLogicalSet reduce_weight(const LogicalSet& input, std::size_t exhaustive_limit = 16) {
  ReducedLogicalSet result;
  result.set = input;
  LogicalSet& set = result.set;
  const std::size_t g = set.generators.rows.size();
  if (g <= exhaustive_limit) {
    // All 2^g stabilizer elements, sign-exact: element(mask) extends
    // element(mask without lowest bit) by one generator.
    std::vector<PauliRow> elements;
    elements.reserve(std::size_t{1} << g);
    elements.push_back(PauliRow(set.n));
    for (std::size_t mask = 1; mask < (std::size_t{1} << g); ++mask) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(mask)));
      elements.push_back(multiply(elements[mask & (mask - 1)], set.generators.rows[low]));
    }
    auto reduce_row = [&](const PauliRow& row) {
      PauliRow best = row;
      for (const auto& e : elements) {
        PauliRow cand = multiply(row, e);
        if (detail::weight_lex_less(cand, best)) best = std::move(cand);
      }
      return best;
    };
    for (auto& row : set.logical_z) row = reduce_row(row);
    for (auto& row : set.logical_x) row = reduce_row(row);
    // Minimal-weight generating set: scan all non-identity elements in
    // (weight, string) order, keeping those independent of the kept ones.
    std::vector<PauliRow> sorted(elements.begin() + 1, elements.end());
    std::sort(sorted.begin(), sorted.end(), detail::weight_lex_less);
    CheckMatrix gens(set.n);
    std::vector<BitVec> kept_bits;
    for (const auto& e : sorted) {
      if (gens.rows.size() == g) break;
      const BitVec bits = symplectic_bits(e);
      if (gf2_in_span(kept_bits, bits)) continue;
      kept_bits.push_back(bits);
      gens.append(e);
    }
    set.generators = std::move(gens);
  } else {
    result.exhaustive = false;
    auto descend = [&](PauliRow row) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (const auto& gen : set.generators.rows) {
          PauliRow cand = multiply(row, gen);
          if (detail::weight_lex_less(cand, row)) {
            row = std::move(cand);
            improved = true;
          }
        }
      }
      return row;
    };
    for (auto& row : set.logical_z) row = descend(row);
    for (auto& row : set.logical_x) row = descend(row);
  }
  return result;
}

// ---- serialization ----

inline std::string to_text(const LogicalSet& set) {
  std::string out = "logicals v1\nqubits " + std::to_string(set.n) + "\nlogical_qubits " +
                    std::to_string(set.k) + "\n[generators]\n";
  for (const auto& row : set.generators.rows) out += to_string(row) + "\n";
  out += "[logical_z]\n";
  for (const auto& row : set.logical_z) out += to_string(row) + "\n";
  out += "[logical_x]\n";
  for (const auto& row : set.logical_x) out += to_string(row) + "\n";
  return out;
}

inline LogicalSet logical_set_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "logicals v1") throw error("logical set: bad header");
  LogicalSet set;
  std::string word;
  std::size_t value = 0;
  {
    std::istringstream l2{(std::getline(in, line), line)};
    if (!(l2 >> word >> value) || word != "qubits") throw error("logical set: bad qubits line");
    set.n = value;
    std::istringstream l3{(std::getline(in, line), line)};
    if (!(l3 >> word >> value) || word != "logical_qubits") throw error("logical set: bad logical_qubits line");
    set.k = value;
  }
  set.generators = CheckMatrix(set.n);
  int section = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "[generators]") { section = 0; continue; }
    if (line == "[logical_z]") { section = 1; continue; }
    if (line == "[logical_x]") { section = 2; continue; }
    PauliRow row = parse_pauli(line);
    if (row.size() != set.n) throw error("logical set: row width mismatch");
    if (section == 0) set.generators.append(std::move(row));
    else if (section == 1) set.logical_z.push_back(std::move(row));
    else if (section == 2) set.logical_x.push_back(std::move(row));
    else throw error("logical set: row outside any section");
  }
  return set;
}

}  // namespace holo
