#pragma once

// Stabilizer-state tensor products and Bell-pair index contraction: joining
// qubit pairs of a pure stabilizer state (or a network of blocks) by
// projecting them onto the two-qubit maximally entangled state and removing
// them, with exact sign tracking throughout.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "holo/symplectic.hpp"

namespace holo {

inline CheckMatrix tensor_product(const CheckMatrix& a, const CheckMatrix& b) {
  CheckMatrix out(a.qubits + b.qubits);
  const BitVec pad_a(b.qubits);
  const BitVec pad_b(a.qubits);
  for (const auto& row : a.rows) out.append(PauliRow(row.x.concat(pad_a), row.z.concat(pad_a), row.sign));
  for (const auto& row : b.rows) out.append(PauliRow(pad_b.concat(row.x), pad_b.concat(row.z), row.sign));
  return out;
}

namespace detail {

// Pauli pattern with the given letters at positions i and j, identity
// elsewhere, + sign. letter_x/letter_z describe one letter as an (x,z) pair.
inline PauliRow embed_two(std::size_t m, std::size_t i, std::size_t j, bool xi, bool zi, bool xj, bool zj) {
  PauliRow row(m);
  row.x.set(i, xi);
  row.z.set(i, zi);
  row.x.set(j, xj);
  row.z.set(j, zj);
  return row;
}

// Highest row index whose (x|z) pattern lies in the GF(2) span of the other
// rows, or row_count when none is dependent.
inline std::size_t find_dependent_highest(const CheckMatrix& mat) {
  const auto bits = symplectic_bits(mat);
  for (std::size_t r = mat.rows.size(); r-- > 0;) {
    std::vector<BitVec> others;
    others.reserve(bits.size() - 1);
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (k != r) others.push_back(bits[k]);
    if (gf2_in_span(others, bits[r])) return r;
  }
  return mat.rows.size();
}

}  // namespace detail

// Contract qubits i and j of a pure stabilizer state: project onto the Bell
// pair (|00>+|11>)/sqrt(2) on (i, j), then strip both qubits. The result is
// the pure stabilizer state on the remaining qubits (original order, i and j
// removed). Throws when the state has zero overlap with the Bell pair.
inline CheckMatrix bell_contract(const CheckMatrix& input, std::size_t i, std::size_t j) {
  if (i == j) throw error("bell_contract: positions must differ");
  if (i >= input.qubits || j >= input.qubits) throw error("bell_contract: position out of range");
  CheckMatrix c = input;
  const std::size_t m = c.qubits;
  // Install the Bell stabilizers X_i X_j and Z_i Z_j into the group.
  for (int which = 0; which < 2; ++which) {
    const bool use_x = which == 0;
    const PauliRow f = use_x ? detail::embed_two(m, i, j, true, false, true, false)
                             : detail::embed_two(m, i, j, false, true, false, true);
    std::vector<std::size_t> anti;
    for (std::size_t r = 0; r < c.rows.size(); ++r)
      if (!commutes(c.rows[r], f)) anti.push_back(r);
    if (!anti.empty()) {
      const std::size_t lead = anti[0];
      for (std::size_t k = 1; k < anti.size(); ++k) c.mul_into(anti[k], lead);
      c.rows[lead] = f;
    } else {
      // f commutes with everything, so it must already be in the group with
      // + sign; otherwise the projection annihilates the state.
      auto s = sign_in_group(c, f);
      if (!s || *s) throw error("bell_contract: zero overlap with the Bell pair");
    }
  }
  // Every row now has matching letters at i and j (I..I, X..X, Y..Y or
  // Z..Z). Strip both columns; a Y..Y factor flips the sign because the
  // installed group element with that pattern is -Y_i Y_j.
  CheckMatrix stripped(m - 2);
  for (const auto& row : c.rows) {
    const bool xi = row.x.get(i), zi = row.z.get(i);
    if (xi != row.x.get(j) || zi != row.z.get(j))
      throw error("bell_contract: internal factor mismatch");
    bool sign = row.sign;
    if (xi && zi) sign = !sign;
    stripped.append(PauliRow(row.x.erased(i, j), row.z.erased(i, j), sign));
  }
  // Two rows became redundant; drop dependent rows preferring the highest
  // index. Each dropped row must be exactly (sign included) the product of
  // the remaining ones.
  for (int drop = 0; drop < 2; ++drop) {
    const std::size_t d = detail::find_dependent_highest(stripped);
    if (d == stripped.rows.size()) throw error("bell_contract: expected a dependent row");
    CheckMatrix rest(stripped.qubits);
    for (std::size_t r = 0; r < stripped.rows.size(); ++r)
      if (r != d) rest.append(stripped.rows[r]);
    auto s = sign_in_group(rest, stripped.rows[d]);
    if (!s || *s) throw error("bell_contract: inconsistent dependent row");
    stripped = std::move(rest);
  }
  return stripped;
}

// One leg of a tensor network block: tensor index and leg index within it.
struct LegRef {
  std::size_t tensor = 0;
  std::size_t leg = 0;
  bool operator==(const LegRef&) const = default;
  auto operator<=>(const LegRef&) const = default;
};

// Tensor blocks into one state (global qubit index = block offset + leg),
// contract the given leg pairs in order, then reorder the remaining free
// legs to output_order (all free legs, each exactly once). An empty
// output_order keeps the natural (block-major) order.
inline CheckMatrix contract_network(const std::vector<CheckMatrix>& blocks,
                                    const std::vector<std::pair<LegRef, LegRef>>& bonds,
                                    const std::vector<LegRef>& output_order = {}) {
  if (blocks.empty()) throw error("contract_network: no blocks");
  std::vector<std::size_t> offset(blocks.size());
  std::size_t total = 0;
  CheckMatrix state;
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    offset[t] = total;
    total += blocks[t].qubits;
    state = t == 0 ? blocks[0] : tensor_product(state, blocks[t]);
  }
  // position[g]: current column of global leg g, or npos once consumed.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position(total);
  for (std::size_t g = 0; g < total; ++g) position[g] = g;
  auto global_index = [&](const LegRef& ref) {
    if (ref.tensor >= blocks.size() || ref.leg >= blocks[ref.tensor].qubits)
      throw error("contract_network: leg reference out of range");
    return offset[ref.tensor] + ref.leg;
  };
  for (const auto& [a, b] : bonds) {
    const std::size_t ga = global_index(a), gb = global_index(b);
    if (ga == gb) throw error("contract_network: bond joins a leg to itself");
    const std::size_t pa = position[ga], pb = position[gb];
    if (pa == npos || pb == npos) throw error("contract_network: leg contracted twice");
    state = bell_contract(state, pa, pb);
    const std::size_t lo = std::min(pa, pb), hi = std::max(pa, pb);
    position[ga] = position[gb] = npos;
    for (auto& p : position) {
      if (p == npos) continue;
      p -= static_cast<std::size_t>(p > lo) + static_cast<std::size_t>(p > hi);
    }
  }
  if (output_order.empty()) return state;
  if (output_order.size() != state.qubits)
    throw error("contract_network: output order must list every free leg");
  std::vector<std::size_t> source(output_order.size());
  std::vector<bool> used(state.qubits, false);
  for (std::size_t k = 0; k < output_order.size(); ++k) {
    const std::size_t p = position[global_index(output_order[k])];
    if (p == npos) throw error("contract_network: output order names a contracted leg");
    if (used[p]) throw error("contract_network: output order repeats a leg");
    used[p] = true;
    source[k] = p;
  }
  CheckMatrix out(state.qubits);
  for (const auto& row : state.rows)
    out.append(PauliRow(row.x.permuted(source), row.z.permuted(source), row.sign));
  return out;
}

}  // namespace holo
