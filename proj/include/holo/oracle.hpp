#pragma once

// Dense statevector oracle used to cross-check every stabilizer-level
// construction on small systems: gate application, stabilizer-state
// synthesis, graph-state amplitudes, Pauli action, Bell contraction,
// reduced density matrices / entanglement entropy (via Eigen), reference
// encodings, and the multiplicative fidelity estimate.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "holo/circuit_synth.hpp"
#include "holo/graph_code.hpp"
#include "holo/graphification.hpp"

namespace holo {

// Qubit 0 is the most significant bit of the basis index: qubit q flips bit
// (n - 1 - q), so kron(a, b) concatenates indices as a-bits then b-bits.
struct Statevector {
  std::size_t n = 0;
  std::vector<std::complex<double>> amp;

  static constexpr std::size_t max_qubits = 20;

  Statevector() = default;
  explicit Statevector(std::size_t qubits, std::size_t basis = 0) : n(qubits) {
    if (qubits > max_qubits) throw error("statevector: too many qubits for the dense oracle");
    amp.assign(std::size_t{1} << n, {0.0, 0.0});
    if (basis >= amp.size()) throw error("statevector: basis index out of range");
    amp[basis] = 1.0;
  }

  std::size_t dim() const { return amp.size(); }
  std::size_t bit_of(std::size_t q) const { return std::size_t{1} << (n - 1 - q); }
};

inline Statevector plus_state(std::size_t n) {
  Statevector s(n);
  const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
  for (auto& v : s.amp) v = a;
  return s;
}

inline Statevector kron(const Statevector& a, const Statevector& b) {
  if (a.n + b.n > Statevector::max_qubits) throw error("kron: too many qubits");
  Statevector out(a.n + b.n);
  out.amp.assign(out.dim(), {0.0, 0.0});
  for (std::size_t ia = 0; ia < a.dim(); ++ia) {
    if (a.amp[ia] == std::complex<double>{}) continue;
    for (std::size_t ib = 0; ib < b.dim(); ++ib)
      out.amp[(ia << b.n) | ib] = a.amp[ia] * b.amp[ib];
  }
  return out;
}

inline std::complex<double> inner(const Statevector& a, const Statevector& b) {
  if (a.n != b.n) throw error("inner: dimension mismatch");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
  return acc;
}

inline double norm(const Statevector& s) {
  double acc = 0.0;
  for (const auto& v : s.amp) acc += std::norm(v);
  return std::sqrt(acc);
}

inline void normalize(Statevector& s) {
  const double nrm = norm(s);
  if (nrm < 1e-12) throw error("normalize: zero state");
  for (auto& v : s.amp) v /= nrm;
}

// Equality of normalized pure states up to global phase.
inline bool states_equal(const Statevector& a, const Statevector& b, double tol = 1e-10) {
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

inline double frobenius_distance(const Statevector& a, const Statevector& b) {
  if (a.n != b.n) throw error("frobenius_distance: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::norm(a.amp[i] - b.amp[i]);
  return std::sqrt(acc);
}

// ---- gate application ----

using Mat2 = std::array<std::complex<double>, 4>;  // row major

inline Mat2 gate_matrix(GateKind k) {
  constexpr std::complex<double> i{0.0, 1.0};
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1.0, 0.0, 0.0, i};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -i, i, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::SqrtX: return {0.5 * (1.0 + i), 0.5 * (1.0 - i), 0.5 * (1.0 - i), 0.5 * (1.0 + i)};
    case GateKind::SqrtXdg: return {0.5 * (1.0 - i), 0.5 * (1.0 + i), 0.5 * (1.0 + i), 0.5 * (1.0 - i)};
    default: throw error("gate_matrix: not a single-qubit gate");
  }
}

inline void apply_single(Statevector& s, const Mat2& m, std::size_t q) {
  if (q >= s.n) throw error("apply_single: qubit out of range");
  const std::size_t bit = s.bit_of(q);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i & bit) continue;
    const auto a0 = s.amp[i], a1 = s.amp[i | bit];
    s.amp[i] = m[0] * a0 + m[1] * a1;
    s.amp[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

inline void apply_cz(Statevector& s, std::size_t a, std::size_t b) {
  if (a >= s.n || b >= s.n || a == b) throw error("apply_cz: bad qubits");
  const std::size_t mask = s.bit_of(a) | s.bit_of(b);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if ((i & mask) == mask) s.amp[i] = -s.amp[i];
}

inline void apply_cx(Statevector& s, std::size_t control, std::size_t target) {
  if (control >= s.n || target >= s.n || control == target) throw error("apply_cx: bad qubits");
  const std::size_t cb = s.bit_of(control), tb = s.bit_of(target);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(s.amp[i], s.amp[i | tb]);
}

// Run a circuit; `qubit_of` maps circuit qubits to state qubits (identity
// when empty).
inline void run(const CliffordCircuit& c, Statevector& s, const std::vector<std::size_t>& qubit_of = {}) {
  if (qubit_of.empty() && c.n != s.n) throw error("run: qubit count mismatch");
  if (!qubit_of.empty() && qubit_of.size() != c.n) throw error("run: qubit map size mismatch");
  auto at = [&](std::size_t q) { return qubit_of.empty() ? q : qubit_of[q]; };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::CZ: apply_cz(s, at(g.a), at(g.b)); break;
      case GateKind::CX: apply_cx(s, at(g.a), at(g.b)); break;
      default: apply_single(s, gate_matrix(g.kind), at(g.a)); break;
    }
  }
}

// ---- Pauli action and stabilizer-state synthesis ----

inline Statevector apply_pauli(const PauliRow& row, const Statevector& s) {
  if (row.size() != s.n) throw error("apply_pauli: dimension mismatch");
  std::size_t xmask = 0, zmask = 0, ys = 0;
  for (std::size_t q = 0; q < s.n; ++q) {
    if (row.x.get(q)) xmask |= s.bit_of(q);
    if (row.z.get(q)) zmask |= s.bit_of(q);
    if (row.x.get(q) && row.z.get(q)) ++ys;
  }
  constexpr std::complex<double> iu{0.0, 1.0};
  std::complex<double> phase = 1.0;
  for (std::size_t t = 0; t < ys % 4; ++t) phase *= iu;
  if (row.sign) phase = -phase;
  Statevector out(s.n);
  out.amp.assign(s.dim(), {0.0, 0.0});
  for (std::size_t b = 0; b < s.dim(); ++b) {
    if (s.amp[b] == std::complex<double>{}) continue;
    const double z = (std::popcount(static_cast<std::uint64_t>(b) & zmask) & 1) ? -1.0 : 1.0;
    out.amp[b ^ xmask] += phase * z * s.amp[b];
  }
  return out;
}

inline std::complex<double> expectation(const Statevector& s, const PauliRow& row) {
  return inner(s, apply_pauli(row, s));
}

// The unique pure state stabilized by a full set of n independent
// commuting generators: project successive fiducial basis states with
// prod (1 + g)/2 until one survives. Global phase fixed by making the first
// sizable amplitude real positive.
inline Statevector from_stabilizer(const CheckMatrix& c) {
  if (c.rows.size() != c.qubits) throw error("from_stabilizer: need n generators for n qubits");
  for (std::size_t basis = 0; basis < (std::size_t{1} << c.qubits); ++basis) {
    Statevector s(c.qubits, basis);
    for (const auto& g : c.rows) {
      const Statevector gs = apply_pauli(g, s);
      for (std::size_t i = 0; i < s.dim(); ++i) s.amp[i] = 0.5 * (s.amp[i] + gs.amp[i]);
    }
    if (norm(s) < 1e-6) continue;
    normalize(s);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (std::abs(s.amp[i]) > 1e-8) {
        const std::complex<double> phase = s.amp[i] / std::abs(s.amp[i]);
        for (auto& v : s.amp) v /= phase;
        break;
      }
    }
    return s;
  }
  throw error("from_stabilizer: no fiducial state survived projection");
}

// Graph-state amplitudes: amp(b) = (-1)^{#edges inside b} / 2^{n/2}.
inline Statevector graph_vector(const GraphState& g) {
  Statevector s(g.n);
  const double a = std::pow(2.0, -0.5 * static_cast<double>(g.n));
  for (std::size_t b = 0; b < s.dim(); ++b) {
    std::size_t edges = 0;
    for (const auto& [u, v] : g.edges())
      if ((b & s.bit_of(u)) && (b & s.bit_of(v))) ++edges;
    s.amp[b] = (edges & 1) ? -a : a;
  }
  return s;
}

// Contract qubits i and j of a state with a Bell pair (<00| + <11|)/sqrt 2,
// renormalizing; throws when the overlap vanishes.
inline Statevector contract_bell_pair(const Statevector& s, std::size_t i, std::size_t j) {
  if (i >= s.n || j >= s.n || i == j) throw error("contract_bell_pair: bad qubits");
  const std::size_t hi = std::min(i, j), lo = std::max(i, j);
  const std::size_t bi = s.bit_of(i), bj = s.bit_of(j);
  Statevector out(s.n - 2);
  out.amp.assign(out.dim(), {0.0, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t b = 0; b < s.dim(); ++b) {
    const bool vi = b & bi, vj = b & bj;
    if (vi != vj) continue;
    // Remove the bits of qubits hi/lo (positions n-1-hi > n-1-lo).
    const std::size_t phi = s.n - 1 - hi, plo = s.n - 1 - lo;
    std::size_t rest = b & ((std::size_t{1} << plo) - 1);
    rest |= (b >> (plo + 1) & ((std::size_t{1} << (phi - plo - 1)) - 1)) << plo;
    rest |= (b >> (phi + 1)) << (phi - 1);
    out.amp[rest] += r * s.amp[b];
  }
  if (norm(out) < 1e-9) throw error("contract_bell_pair: zero overlap with the Bell pair");
  normalize(out);
  return out;
}

// ---- reduced states and entanglement entropy ----

inline Eigen::MatrixXcd reduced_density(const Statevector& s, std::vector<std::size_t> keep) {
  for (std::size_t q : keep)
    if (q >= s.n) throw error("reduced_density: qubit out of range");
  std::vector<std::size_t> rest;
  {
    std::vector<bool> kept(s.n, false);
    for (std::size_t q : keep) {
      if (kept[q]) throw error("reduced_density: duplicate qubit");
      kept[q] = true;
    }
    for (std::size_t q = 0; q < s.n; ++q)
      if (!kept[q]) rest.push_back(q);
  }
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dr = std::size_t{1} << rest.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  std::vector<std::complex<double>> col(dk);
  for (std::size_t r = 0; r < dr; ++r) {
    for (std::size_t k = 0; k < dk; ++k) {
      std::size_t idx = 0;
      for (std::size_t t = 0; t < keep.size(); ++t)
        if (k & (std::size_t{1} << (keep.size() - 1 - t))) idx |= s.bit_of(keep[t]);
      for (std::size_t t = 0; t < rest.size(); ++t)
        if (r & (std::size_t{1} << (rest.size() - 1 - t))) idx |= s.bit_of(rest[t]);
      col[k] = s.amp[idx];
    }
    for (std::size_t a = 0; a < dk; ++a)
      for (std::size_t b = 0; b < dk; ++b)
        rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += col[a] * std::conj(col[b]);
  }
  return rho;
}

// Von Neumann entropy (base 2) of the reduced state on `keep`; computed on
// the smaller side of the bipartition (same value for a pure state).
inline double reduced_entropy(const Statevector& s, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> side = keep;
  if (2 * side.size() > s.n) {
    std::vector<bool> kept(s.n, false);
    for (std::size_t q : side) kept[q] = true;
    side.clear();
    for (std::size_t q = 0; q < s.n; ++q)
      if (!kept[q]) side.push_back(q);
  }
  const Eigen::MatrixXcd rho = reduced_density(s, side);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > 1e-14) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

// ---- reference encoding ----

// Encoded state of an arbitrary k-qubit input under the graph code: the
// bulk indices of the (k+n)-qubit graph state are contracted with the
// input amplitudes and the result rescaled by 2^{k/2} (an isometry for a
// full-rank bulk-boundary block). Output qubit t is boundary position t.
inline Statevector encode_reference(const GraphCode& code, const Statevector& input) {
  const std::size_t k = code.k(), n = code.n();
  if (input.n != k) throw error("encode_reference: input must have k qubits");
  if (k + n > Statevector::max_qubits) throw error("encode_reference: too many qubits");
  const Statevector g = graph_vector(code.graph);
  Statevector out(n);
  out.amp.assign(out.dim(), {0.0, 0.0});
  for (std::size_t idx = 0; idx < g.dim(); ++idx) {
    std::size_t b = 0, y = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (idx & g.bit_of(code.bulk[i])) b |= std::size_t{1} << (k - 1 - i);
    for (std::size_t t = 0; t < n; ++t)
      if (idx & g.bit_of(code.boundary[t])) y |= std::size_t{1} << (n - 1 - t);
    out.amp[y] += input.amp[b] * g.amp[idx];
  }
  const double scale = std::pow(2.0, 0.5 * static_cast<double>(k));
  for (auto& v : out.amp) v *= scale;
  return out;
}

inline Statevector logical_basis_state(const GraphCode& code, std::size_t bits) {
  return encode_reference(code, Statevector(code.k(), bits));
}

// ---- fidelity estimate ----

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

// Multiplicative fidelity model: F = prod f_i^{n_i} with first-order error
// propagation dF = F * sqrt(sum (n_i df_i / f_i)^2).
inline ValueWithError estimate_fidelity(const std::vector<std::pair<std::size_t, ValueWithError>>& factors) {
  double value = 1.0, rel2 = 0.0;
  for (const auto& [count, f] : factors) {
    if (f.value <= 0.0) throw error("estimate_fidelity: non-positive factor");
    value *= std::pow(f.value, static_cast<double>(count));
    const double rel = static_cast<double>(count) * f.error / f.value;
    rel2 += rel * rel;
  }
  return ValueWithError{value, value * std::sqrt(rel2)};
}

}  // namespace holo
