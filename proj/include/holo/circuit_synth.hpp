#pragma once

// Clifford circuits over {H, S, S†, X, Y, Z, √X, √X†, CZ, CX}, with exact
// sign-tracking conjugation of Pauli rows, text/JSON serialization, and the
// synthesis routines that turn a graph code into an encoding circuit and a
// region of it into a partial decoding circuit.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "holo/graph_code.hpp"

namespace holo {

enum class GateKind { H, S, Sdg, X, Y, Z, SqrtX, SqrtXdg, CZ, CX };

inline bool is_two_qubit(GateKind k) { return k == GateKind::CZ || k == GateKind::CX; }

inline std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::SqrtX: return "SX";
    case GateKind::SqrtXdg: return "SXdg";
    case GateKind::CZ: return "CZ";
    case GateKind::CX: return "CX";
  }
  throw error("gate_name: unknown gate");
}

inline GateKind gate_from_name(const std::string& s) {
  if (s == "H") return GateKind::H;
  if (s == "S") return GateKind::S;
  if (s == "Sdg") return GateKind::Sdg;
  if (s == "X") return GateKind::X;
  if (s == "Y") return GateKind::Y;
  if (s == "Z") return GateKind::Z;
  if (s == "SX") return GateKind::SqrtX;
  if (s == "SXdg") return GateKind::SqrtXdg;
  if (s == "CZ") return GateKind::CZ;
  if (s == "CX") return GateKind::CX;
  throw error("gate_from_name: unknown gate '" + s + "'");
}

inline SingleGate to_single_gate(GateKind k) {
  switch (k) {
    case GateKind::H: return SingleGate::H;
    case GateKind::S: return SingleGate::S;
    case GateKind::Sdg: return SingleGate::Sdag;
    case GateKind::X: return SingleGate::X;
    case GateKind::Y: return SingleGate::Y;
    case GateKind::Z: return SingleGate::Z;
    case GateKind::SqrtX: return SingleGate::SqrtX;
    case GateKind::SqrtXdg: return SingleGate::SqrtXdag;
    default: throw error("to_single_gate: two-qubit gate");
  }
}

// One gate; `b` is meaningful only for CZ (unordered pair) and CX
// (a = control, b = target).
struct Gate {
  GateKind kind;
  std::size_t a = 0;
  std::size_t b = 0;
  bool operator==(const Gate&) const = default;
};

struct CliffordCircuit {
  std::size_t n = 0;
  std::vector<std::string> names;
  std::vector<VertexRole> roles;
  std::vector<Gate> gates;

  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t qubits) { reset(qubits); }

  void reset(std::size_t qubits) {
    n = qubits;
    names.resize(n);
    roles.assign(n, VertexRole::Boundary);
    for (std::size_t q = 0; q < n; ++q) names[q] = "q" + std::to_string(q);
    gates.clear();
  }

  void add(GateKind kind, std::size_t a) {
    if (is_two_qubit(kind)) throw error("circuit: two-qubit gate needs two qubits");
    if (a >= n) throw error("circuit: qubit out of range");
    gates.push_back(Gate{kind, a, 0});
  }
  void add(GateKind kind, std::size_t a, std::size_t b) {
    if (!is_two_qubit(kind)) throw error("circuit: single-qubit gate takes one qubit");
    if (a >= n || b >= n) throw error("circuit: qubit out of range");
    if (a == b) throw error("circuit: two-qubit gate on one qubit");
    gates.push_back(Gate{kind, a, b});
  }
  void extend(const std::vector<Gate>& more) {
    for (const Gate& g : more) {
      if (is_two_qubit(g.kind)) add(g.kind, g.a, g.b);
      else add(g.kind, g.a);
    }
  }
};

inline GateKind inverse_kind(GateKind k) {
  switch (k) {
    case GateKind::S: return GateKind::Sdg;
    case GateKind::Sdg: return GateKind::S;
    case GateKind::SqrtX: return GateKind::SqrtXdg;
    case GateKind::SqrtXdg: return GateKind::SqrtX;
    default: return k;  // H, X, Y, Z, CZ, CX are involutions
  }
}

inline CliffordCircuit dagger(const CliffordCircuit& c) {
  CliffordCircuit out = c;
  out.gates.clear();
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    out.gates.push_back(Gate{inverse_kind(it->kind), it->a, it->b});
  return out;
}

// ---- exact conjugation g P g^dagger ----

inline void conjugate_gate(PauliRow& row, const Gate& g) {
  switch (g.kind) {
    case GateKind::CZ: {
      const bool xa = row.x.get(g.a), za = row.z.get(g.a);
      const bool xb = row.x.get(g.b), zb = row.z.get(g.b);
      if (xa && xb && (za ^ zb)) row.sign = !row.sign;
      row.z.set(g.a, za ^ xb);
      row.z.set(g.b, zb ^ xa);
      return;
    }
    case GateKind::CX: {
      const bool xc = row.x.get(g.a), zc = row.z.get(g.a);
      const bool xt = row.x.get(g.b), zt = row.z.get(g.b);
      if (xc && zt && !(xt ^ zc)) row.sign = !row.sign;
      row.x.set(g.b, xt ^ xc);
      row.z.set(g.a, zc ^ zt);
      return;
    }
    default:
      conjugate_single_clifford(row, to_single_gate(g.kind), g.a);
      return;
  }
}

// Conjugate every row by the whole circuit: with U = g_m ... g_1 (g_1 acts
// first), each row P becomes U P U^dagger.
inline CheckMatrix conjugate_through(const CliffordCircuit& c, CheckMatrix m) {
  if (m.qubits != c.n) throw error("conjugate_through: qubit count mismatch");
  for (const Gate& g : c.gates)
    for (auto& row : m.rows) conjugate_gate(row, g);
  return m;
}

inline PauliRow conjugate_through(const CliffordCircuit& c, PauliRow row) {
  if (row.size() != c.n) throw error("conjugate_through: qubit count mismatch");
  for (const Gate& g : c.gates) conjugate_gate(row, g);
  return row;
}

// ---- controlled Pauli decomposition ----

// Gates implementing controlled-P from qubit `control` onto the support of
// the signed Pauli row `target` (which must be identity at the control).
// Pattern: CZ onto each Z/Y position, CX onto each X/Y position; each Y
// contributes a factor i and a -1 sign contributes two, fixed by a phase
// gate on the control (S, Z, or S-dagger). When the net phase is -1 and the
// target has a Y, the correction is folded in by emitting that Y's CZ after
// the CX block instead (the CX absorbs the Z, flipping the sign back).
inline std::vector<Gate> decompose_controlled_pauli(std::size_t control, const PauliRow& target) {
  if (control >= target.size()) throw error("controlled pauli: control out of range");
  if (target.x.get(control) || target.z.get(control))
    throw error("controlled pauli: target acts on the control qubit");
  std::vector<std::size_t> xs, zs, ys;
  for (std::size_t q = 0; q < target.size(); ++q) {
    const bool x = target.x.get(q), z = target.z.get(q);
    if (x) xs.push_back(q);
    if (z) zs.push_back(q);
    if (x && z) ys.push_back(q);
  }
  const std::size_t e = (ys.size() + (target.sign ? 2 : 0)) % 4;
  std::vector<std::size_t> late;  // CZ emitted after the CX block
  if (e == 2 && !ys.empty()) late.push_back(ys.front());
  std::vector<Gate> out;
  for (std::size_t q : zs)
    if (std::find(late.begin(), late.end(), q) == late.end())
      out.push_back(Gate{GateKind::CZ, control, q});
  for (std::size_t q : xs) out.push_back(Gate{GateKind::CX, control, q});
  for (std::size_t q : late) out.push_back(Gate{GateKind::CZ, control, q});
  if (late.empty()) {
    if (e == 1) out.push_back(Gate{GateKind::S, control, 0});
    else if (e == 2) out.push_back(Gate{GateKind::Z, control, 0});
    else if (e == 3) out.push_back(Gate{GateKind::Sdg, control, 0});
  }
  return out;
}

// ---- synthesis ----

// Circuit on the n boundary qubits (indexed by boundary position) preparing
// the logical all-zero code state from |0...0>: H everywhere, then CZ per
// boundary-boundary edge.
inline CliffordCircuit synthesize_logical_zero(const GraphCode& code) {
  CliffordCircuit c(code.n());
  for (std::size_t t = 0; t < code.n(); ++t) {
    c.names[t] = code.graph.names[code.boundary[t]];
    c.add(GateKind::H, t);
  }
  for (std::size_t s = 0; s < code.n(); ++s)
    for (std::size_t t = s + 1; t < code.n(); ++t)
      if (code.graph.has_edge(code.boundary[s], code.boundary[t])) c.add(GateKind::CZ, s, t);
  return c;
}

// Encoding circuit on all k + n vertices (qubit index = vertex index). Bulk
// qubits carry the arbitrary k-qubit input state, boundary qubits start in
// |0>. After the circuit the bulk factors out in |+>^k and the boundary
// holds the encoded state. Stages:
//   1. H on every boundary qubit; CZ per bulk-bulk edge; CZ per
//      boundary-boundary edge.
//   2. CZ per bulk-boundary edge (grouped by bulk qubit).
//   3. H on every bulk qubit, then per bulk qubit the controlled logical-Z
//      representative.
// `logicals` must be extracted from (or valid for) the same code; its Z
// rows are indexed by boundary position.
inline CliffordCircuit synthesize_encoder(const GraphCode& code, const LogicalSet& logicals) {
  if (logicals.n != code.n() || logicals.k != code.k())
    throw error("synthesize_encoder: logical set does not match the code");
  const std::size_t m = code.graph.n;
  CliffordCircuit c(m);
  c.names = code.graph.names;
  c.roles = code.graph.roles;
  for (std::size_t t = 0; t < code.n(); ++t) c.add(GateKind::H, code.boundary[t]);
  for (std::size_t i = 0; i < code.k(); ++i)
    for (std::size_t j = i + 1; j < code.k(); ++j)
      if (code.graph.has_edge(code.bulk[i], code.bulk[j])) c.add(GateKind::CZ, code.bulk[i], code.bulk[j]);
  for (std::size_t s = 0; s < code.n(); ++s)
    for (std::size_t t = s + 1; t < code.n(); ++t)
      if (code.graph.has_edge(code.boundary[s], code.boundary[t]))
        c.add(GateKind::CZ, code.boundary[s], code.boundary[t]);
  for (std::size_t i = 0; i < code.k(); ++i)
    for (std::size_t t = 0; t < code.n(); ++t)
      if (code.graph.has_edge(code.bulk[i], code.boundary[t]))
        c.add(GateKind::CZ, code.bulk[i], code.boundary[t]);
  for (std::size_t i = 0; i < code.k(); ++i) c.add(GateKind::H, code.bulk[i]);
  for (std::size_t i = 0; i < code.k(); ++i) {
    // Widen the boundary-indexed logical Z row to vertex indexing.
    PauliRow wide(m);
    wide.sign = logicals.logical_z[i].sign;
    for (std::size_t t = 0; t < code.n(); ++t) {
      wide.x.set(code.boundary[t], logicals.logical_z[i].x.get(t));
      wide.z.set(code.boundary[t], logicals.logical_z[i].z.get(t));
    }
    c.extend(decompose_controlled_pauli(code.bulk[i], wide));
  }
  return c;
}

// Partial decoder for a sub-region code. Acts on the sub-code's vertices
// (qubit index = sub-graph vertex index): the sub-bulk qubits are fresh
// ancillas prepared in |+>, the sub-boundary qubits are the physical qubits
// of the fully encoded state that lie in the region. The circuit is
//   per-qubit frame corrections on the sub-boundary,
//   dagger of the sub-code encoder,
//   per-qubit frame corrections on the sub-bulk,
// where the corrections reconcile the stabilizer-to-graph conversion of the
// full code (record `full_rec`, with `full_vertex_of` mapping sub vertices
// to full-graph vertices, npos where there is no counterpart) with that of
// the sub-code (record `sub_rec`, on sub vertices).
inline CliffordCircuit synthesize_partial_decoder(const GraphCode& sub, const LogicalSet& sub_logicals,
                                                  const ConversionRecord& full_rec,
                                                  const ConversionRecord& sub_rec,
                                                  const std::vector<std::size_t>& full_vertex_of) {
  const std::size_t m = sub.graph.n;
  if (full_vertex_of.size() != m) throw error("partial decoder: vertex map size mismatch");
  auto contains = [](const std::vector<std::size_t>& set, std::size_t v) {
    return std::find(set.begin(), set.end(), v) != set.end();
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  CliffordCircuit c(m);
  c.names = sub.graph.names;
  c.roles = sub.graph.roles;
  for (std::size_t sv : sub.boundary) {
    const std::size_t fv = full_vertex_of[sv];
    if (fv == npos) throw error("partial decoder: sub-boundary qubit without a full-code counterpart");
    const bool av = contains(full_rec.z_set, fv);
    const bool bv = contains(full_rec.hadamard_set, fv);
    const bool bw = contains(sub_rec.hadamard_set, sv);
    const bool cw = contains(sub_rec.z_set, sv);
    if (av) c.add(GateKind::Z, sv);
    if (bv ^ bw) c.add(GateKind::H, sv);
    if (cw) c.add(GateKind::Z, sv);
  }
  const CliffordCircuit enc = synthesize_encoder(sub, sub_logicals);
  c.extend(dagger(enc).gates);
  for (std::size_t sv : sub.bulk) {
    const std::size_t fv = full_vertex_of[sv];
    const bool av = fv != npos && contains(full_rec.z_set, fv);
    const bool bv = fv != npos && contains(full_rec.hadamard_set, fv);
    const bool bw = contains(sub_rec.hadamard_set, sv);
    const bool cw = contains(sub_rec.z_set, sv);
    if (bw) c.add(GateKind::H, sv);
    if (cw ^ av) c.add(GateKind::Z, sv);
    if (bv) c.add(GateKind::H, sv);
  }
  return c;
}

// ---- serialization ----

inline std::string to_text(const CliffordCircuit& c) {
  std::string out = "circuit v1\nqubits " + std::to_string(c.n) + "\n";
  for (std::size_t q = 0; q < c.n; ++q) {
    if (c.names[q].find_first_of(" \t\n") != std::string::npos)
      throw error("circuit: qubit name contains whitespace");
    out += "qubit " + std::to_string(q) + " " + c.names[q] + " " + role_name(c.roles[q]) + "\n";
  }
  out += "gates " + std::to_string(c.gates.size()) + "\n";
  for (const Gate& g : c.gates) {
    out += gate_name(g.kind) + " " + std::to_string(g.a);
    if (is_two_qubit(g.kind)) out += " " + std::to_string(g.b);
    out += "\n";
  }
  return out;
}

inline CliffordCircuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "circuit v1") throw error("circuit: bad header");
  CliffordCircuit c;
  std::size_t declared_gates = 0;
  bool in_gates = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "qubits") {
      std::size_t n = 0;
      if (!(ls >> n)) throw error("circuit: bad qubits line");
      c.reset(n);
    } else if (word == "qubit") {
      std::size_t q = 0;
      std::string name, role;
      if (!(ls >> q >> name >> role) || q >= c.n) throw error("circuit: bad qubit line");
      c.names[q] = name;
      c.roles[q] = role_from_name(role);
    } else if (word == "gates") {
      if (!(ls >> declared_gates)) throw error("circuit: bad gates line");
      in_gates = true;
    } else {
      if (!in_gates) throw error("circuit: gate before gates header");
      const GateKind kind = gate_from_name(word);
      std::size_t a = 0, b = 0;
      if (!(ls >> a)) throw error("circuit: bad gate line");
      if (is_two_qubit(kind)) {
        if (!(ls >> b)) throw error("circuit: bad gate line");
        c.add(kind, a, b);
      } else {
        c.add(kind, a);
      }
    }
  }
  if (c.gates.size() != declared_gates) throw error("circuit: gate count mismatch");
  return c;
}

}  // namespace holo
