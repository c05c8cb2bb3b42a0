// Bell-pair contraction of stabilizer check matrices, verified against the
// dense projection oracle.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "holo/contraction.hpp"
#include "holo/oracle.hpp"
#include "holo/random_states.hpp"

using holo::CheckMatrix;
using holo::LegRef;
using holo::Statevector;

namespace {

CheckMatrix bell_check() {
  CheckMatrix c(2);
  c.append(holo::parse_pauli("+XX"));
  c.append(holo::parse_pauli("+ZZ"));
  return c;
}

CheckMatrix ghz3_check() {
  CheckMatrix c(3);
  c.append(holo::parse_pauli("+XXX"));
  c.append(holo::parse_pauli("+ZZI"));
  c.append(holo::parse_pauli("+IZZ"));
  return c;
}

// Reorder qubits of a dense state: output qubit k is input qubit perm[k].
Statevector permute_qubits(const Statevector& s, const std::vector<std::size_t>& perm) {
  Statevector out(s.n);
  out.amp.assign(s.dim(), {0.0, 0.0});
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < s.n; ++k)
      if (i & s.bit_of(perm[k])) j |= out.bit_of(k);
    out.amp[j] = s.amp[i];
  }
  return out;
}

}  // namespace

TEST_CASE("tensor product concatenates qubits and rows") {
  const CheckMatrix prod = holo::tensor_product(bell_check(), ghz3_check());
  REQUIRE(prod.qubits == 5);
  REQUIRE(prod.row_count() == 5);
  REQUIRE(holo::to_string(prod.rows[0]) == "+XXIII");
  REQUIRE(holo::to_string(prod.rows[1]) == "+ZZIII");
  REQUIRE(holo::to_string(prod.rows[2]) == "+IIXXX");
  REQUIRE(holo::to_string(prod.rows[3]) == "+IIZZI");
  REQUIRE(holo::to_string(prod.rows[4]) == "+IIIZZ");
}

TEST_CASE("contracting the middle of two Bell pairs swaps entanglement outward") {
  const CheckMatrix two = holo::tensor_product(bell_check(), bell_check());
  const CheckMatrix out = holo::bell_contract(two, 1, 2);
  REQUIRE(out.qubits == 2);
  REQUIRE(holo::same_group(out, bell_check()));
  // Dense agreement.
  const Statevector dense_in = holo::from_stabilizer(two);
  const Statevector expected = holo::contract_bell_pair(dense_in, 1, 2);
  REQUIRE(holo::states_equal(holo::from_stabilizer(out), expected));
}

TEST_CASE("zero overlap with the Bell pair is rejected") {
  // |01> has stabilizers +ZI and -IZ; its Bell overlap vanishes.
  CheckMatrix c(2);
  c.append(holo::parse_pauli("+ZI"));
  c.append(holo::parse_pauli("-IZ"));
  REQUIRE_THROWS_WITH(holo::bell_contract(c, 0, 1), Catch::Matchers::ContainsSubstring("zero overlap"));
  const Statevector dense = holo::from_stabilizer(c);
  REQUIRE_THROWS_AS(holo::contract_bell_pair(dense, 0, 1), holo::error);
}

TEST_CASE("random states contract identically to the dense projection") {
  std::mt19937_64 rng(505);
  int contracted = 0, rejected = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t n = 3 + rng() % 6;  // 3..8 qubits
    const CheckMatrix check = holo::random_stabilizer_check(rng, n, false);
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    const Statevector dense = holo::from_stabilizer(check);
    bool group_threw = false, dense_threw = false;
    CheckMatrix group_out;
    Statevector dense_out;
    try {
      group_out = holo::bell_contract(check, i, j);
    } catch (const holo::error&) {
      group_threw = true;
    }
    try {
      dense_out = holo::contract_bell_pair(dense, i, j);
    } catch (const holo::error&) {
      dense_threw = true;
    }
    REQUIRE(group_threw == dense_threw);
    if (group_threw) {
      ++rejected;
      continue;
    }
    REQUIRE(group_out.qubits == n - 2);
    REQUIRE(group_out.row_count() == n - 2);
    REQUIRE(holo::states_equal(holo::from_stabilizer(group_out), dense_out));
    ++contracted;
  }
  REQUIRE(contracted > 100);
  REQUIRE(rejected > 5);  // the zero-overlap branch is actually exercised
}

TEST_CASE("network contraction is independent of bond order") {
  const std::vector<CheckMatrix> blocks = {ghz3_check(), bell_check(), bell_check()};
  // Wire GHZ legs 1 and 2 through identity Bell wires.
  const std::pair<LegRef, LegRef> bond_a{{0, 1}, {1, 0}};
  const std::pair<LegRef, LegRef> bond_b{{0, 2}, {2, 0}};
  const std::vector<LegRef> order = {{0, 0}, {1, 1}, {2, 1}};
  const CheckMatrix first = holo::contract_network(blocks, {bond_a, bond_b}, order);
  const CheckMatrix second = holo::contract_network(blocks, {bond_b, bond_a}, order);
  REQUIRE(holo::same_group(first, second));
  REQUIRE(holo::same_group(first, ghz3_check()));
}

TEST_CASE("output order permutes the free legs") {
  const std::vector<CheckMatrix> blocks = {ghz3_check(), bell_check()};
  const std::vector<std::pair<LegRef, LegRef>> bonds = {{{0, 0}, {1, 0}}};
  // Natural order of free legs: (0,1), (0,2), (1,1).
  const CheckMatrix natural = holo::contract_network(blocks, bonds);
  const std::vector<LegRef> shuffled = {{1, 1}, {0, 2}, {0, 1}};
  const CheckMatrix reordered = holo::contract_network(blocks, bonds, shuffled);
  const Statevector dense_natural = holo::from_stabilizer(natural);
  // Qubit k of the reordered state is qubit perm[k] of the natural one.
  const Statevector expected = permute_qubits(dense_natural, {2, 1, 0});
  REQUIRE(holo::states_equal(holo::from_stabilizer(reordered), expected));
}

TEST_CASE("network leg bookkeeping rejects bad wiring") {
  const std::vector<CheckMatrix> blocks = {bell_check(), bell_check()};
  REQUIRE_THROWS_AS(holo::contract_network({}, {}), holo::error);
  // Out-of-range leg.
  REQUIRE_THROWS_AS(holo::contract_network(blocks, {{{0, 2}, {1, 0}}}), holo::error);
  // Same leg twice.
  REQUIRE_THROWS_AS(
      holo::contract_network(blocks, {{{0, 1}, {1, 0}}, {{0, 1}, {1, 1}}}), holo::error);
  // Self bond.
  REQUIRE_THROWS_AS(holo::contract_network(blocks, {{{0, 1}, {0, 1}}}), holo::error);
  // Output order must cover every free leg exactly once.
  REQUIRE_THROWS_AS(holo::contract_network(blocks, {{{0, 1}, {1, 0}}}, {{0, 0}}), holo::error);
  REQUIRE_THROWS_AS(
      holo::contract_network(blocks, {{{0, 1}, {1, 0}}}, {{0, 0}, {0, 0}}), holo::error);
  // Output order naming a contracted leg.
  REQUIRE_THROWS_AS(
      holo::contract_network(blocks, {{{0, 1}, {1, 0}}}, {{0, 0}, {0, 1}}), holo::error);
}
