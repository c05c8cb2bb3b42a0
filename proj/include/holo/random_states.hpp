#pragma once

// Seeded generators for property-based tests: random graph states, random
// local-Clifford conjugations of them (every stabilizer state arises this
// way), and generator-presentation scrambling. Doubles are derived from the
// raw engine output so sequences do not depend on the standard library's
// distribution implementations.

#include <cstddef>
#include <random>
#include <vector>

#include "holo/graphification.hpp"
#include "holo/symplectic.hpp"

namespace holo {

inline double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

inline GraphState random_graph_state(std::mt19937_64& rng, std::size_t n) {
  GraphState g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() & 1u) g.set_edge(u, v, true);
  return g;
}

// Conjugate one qubit by a random word of single-qubit Cliffords. With
// `real_only` the alphabet is {H, Z, X}, whose words exhaust the real
// single-qubit Cliffords and preserve real amplitudes.
inline void conjugate_random_word(std::mt19937_64& rng, CheckMatrix& c, std::size_t qubit,
                                  bool real_only, std::size_t max_len = 6) {
  static constexpr SingleGate real_gates[] = {SingleGate::H, SingleGate::Z, SingleGate::X};
  static constexpr SingleGate all_gates[] = {SingleGate::H,     SingleGate::S, SingleGate::Sdag,
                                             SingleGate::X,     SingleGate::Z, SingleGate::SqrtX,
                                             SingleGate::SqrtXdag};
  const std::size_t len = uniform_below(rng, max_len + 1);
  for (std::size_t t = 0; t < len; ++t) {
    const SingleGate gate = real_only ? real_gates[uniform_below(rng, 3)] : all_gates[uniform_below(rng, 7)];
    conjugate_single_clifford(c, gate, qubit);
  }
}

// Re-express the same group: replace random generators by products with
// other generators (all rows of a stabilizer group commute, so the signed
// product is always defined).
inline void scramble_generators(std::mt19937_64& rng, CheckMatrix& c, std::size_t rounds) {
  if (c.rows.size() < 2) return;
  for (std::size_t t = 0; t < rounds; ++t) {
    const std::size_t i = uniform_below(rng, c.rows.size());
    std::size_t j = uniform_below(rng, c.rows.size() - 1);
    if (j >= i) ++j;
    c.rows[i] = multiply(c.rows[i], c.rows[j]);
  }
}

// Random pure stabilizer state on n qubits as a check matrix (random graph
// state, random local conjugations, scrambled presentation).
inline CheckMatrix random_stabilizer_check(std::mt19937_64& rng, std::size_t n, bool real_only) {
  CheckMatrix c = graph_check(random_graph_state(rng, n));
  for (std::size_t q = 0; q < n; ++q) conjugate_random_word(rng, c, q, real_only);
  scramble_generators(rng, c, 2 * n);
  return c;
}

}  // namespace holo
