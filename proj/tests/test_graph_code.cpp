// Bulk/boundary partitions of graph states, logical operator extraction with
// exact signs, and weight reduction. Uses the frozen ring-code and wedge
// golden data plus dense-oracle action checks.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "golden.hpp"
#include "holo/graph_code.hpp"
#include "holo/happy_network.hpp"
#include "holo/oracle.hpp"

using holo::GraphCode;
using holo::GraphState;
using holo::LogicalSet;
using holo::PauliRow;
using holo::Statevector;

namespace {

Statevector random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> dist;
  Statevector s(n);
  for (auto& v : s.amp) v = {dist(rng), dist(rng)};
  holo::normalize(s);
  return s;
}

GraphCode ring_code() { return holo::partition(golden::ring_graph_boundary_first(), {12, 13, 14, 15}); }

// Both rows must represent the same logical operator: their product is a
// stabilizer element with matching sign.
void require_same_coset(const holo::CheckMatrix& generators, const PauliRow& a, const PauliRow& b) {
  const auto membership = holo::sign_in_group(generators, holo::multiply(a, b));
  REQUIRE(membership.has_value());
  REQUIRE(*membership == false);
}

// Dense certification: applying `logical` to an encoded state equals
// encoding the input with `phys` applied to logical qubit `i`.
void require_logical_action(const GraphCode& code, const PauliRow& logical, std::size_t i, char phys,
                            std::mt19937_64& rng) {
  PauliRow on_input(code.k());
  std::string text(code.k(), 'I');
  text[i] = phys;
  on_input = holo::parse_pauli("+" + text);
  for (int trial = 0; trial < 3; ++trial) {
    const Statevector input = random_state(rng, code.k());
    const Statevector lhs = holo::apply_pauli(logical, holo::encode_reference(code, input));
    const Statevector rhs = holo::encode_reference(code, holo::apply_pauli(on_input, input));
    REQUIRE(holo::frobenius_distance(lhs, rhs) < 1e-10);
  }
}

}  // namespace

TEST_CASE("partition splits vertices and assigns roles") {
  const GraphCode code = ring_code();
  REQUIRE(code.k() == 4);
  REQUIRE(code.n() == 12);
  REQUIRE(code.bulk == std::vector<std::size_t>{12, 13, 14, 15});
  for (std::size_t t = 0; t < 12; ++t) {
    REQUIRE(code.boundary[t] == t);
    REQUIRE(code.graph.roles[t] == holo::VertexRole::Boundary);
  }
  for (std::size_t b : code.bulk) REQUIRE(code.graph.roles[b] == holo::VertexRole::Bulk);
}

TEST_CASE("partition keeps cut roles and validates input") {
  GraphState g(4);
  g.set_edge(0, 2, true);
  g.set_edge(1, 3, true);
  g.roles[1] = holo::VertexRole::Cut;
  const GraphCode code = holo::partition(g, {0, 1});
  REQUIRE(code.graph.roles[0] == holo::VertexRole::Bulk);
  REQUIRE(code.graph.roles[1] == holo::VertexRole::Cut);
  REQUIRE(code.boundary == std::vector<std::size_t>{2, 3});

  REQUIRE_THROWS_AS(holo::partition(g, {0, 4}), holo::error);
  REQUIRE_THROWS_AS(holo::partition(g, {0, 0}), holo::error);
  // A bulk vertex with no boundary edges leaves the block rank-deficient.
  GraphState h(3);
  h.set_edge(0, 1, true);
  REQUIRE_THROWS_WITH(holo::partition(h, {2}), Catch::Matchers::ContainsSubstring("rank"));
}

TEST_CASE("bulk-boundary block matches the ring wiring") {
  const GraphCode code = ring_code();
  const auto B = holo::bulk_boundary_block(code);
  REQUIRE(B.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<std::size_t> expected;
    for (int q : golden::kRingBulkEdges[i]) expected.push_back(static_cast<std::size_t>(q - 1));
    std::sort(expected.begin(), expected.end());
    REQUIRE(B[i].ones() == expected);
  }
  REQUIRE(holo::logical_zero_edges(code).size() == 28);
}

TEST_CASE("ring logical X representatives are exact") {
  const GraphCode code = ring_code();
  const LogicalSet set = holo::extract_logicals(code);
  REQUIRE(set.n == 12);
  REQUIRE(set.k == 4);
  REQUIRE(set.generators.row_count() == 8);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(holo::to_string(set.logical_x[i]) == golden::kRingLogicalX[i]);
    // The standalone helper agrees.
    REQUIRE(holo::to_string(holo::logical_x(code)[i]) == golden::kRingLogicalX[i]);
  }
  REQUIRE(holo::logical_set_problem(set).empty());
}

TEST_CASE("ring logical Z representatives match the golden coset and action") {
  const GraphCode code = ring_code();
  const LogicalSet set = holo::extract_logicals(code);
  std::mt19937_64 rng(1313);
  for (std::size_t i = 0; i < 4; ++i) {
    require_same_coset(set.generators, set.logical_z[i], holo::parse_pauli(golden::kRingLogicalZ[i]));
    require_logical_action(code, set.logical_z[i], i, 'Z', rng);
    require_logical_action(code, set.logical_x[i], i, 'X', rng);
  }
}

TEST_CASE("wedge extraction reproduces the frozen strings") {
  const GraphCode code = holo::partition(golden::wedge_graph(), {5, 6, 7, 8, 9});
  REQUIRE(code.n() == 5);
  REQUIRE(code.k() == 5);
  const LogicalSet set = holo::extract_logicals(code);
  REQUIRE(set.generators.row_count() == 0);
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(holo::to_string(set.logical_x[i]) == golden::kWedgeLogicalX[i]);
    REQUIRE(holo::to_string(set.logical_z[i]) == golden::kWedgeLogicalZ[i]);
  }
  REQUIRE(holo::logical_set_problem(set).empty());
}

TEST_CASE("exhaustive weight reduction reaches the frozen minima") {
  const GraphCode code = ring_code();
  const LogicalSet set = holo::extract_logicals(code);
  const holo::ReducedLogicalSet red = holo::reduce_weight(set);
  REQUIRE(red.exhaustive);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(holo::to_string(red.set.logical_z[i]) == golden::kRingReducedZ[i]);
    REQUIRE(holo::to_string(red.set.logical_x[i]) == golden::kRingReducedX[i]);
    // Same logical operator as before the reduction.
    require_same_coset(set.generators, red.set.logical_z[i], set.logical_z[i]);
    require_same_coset(set.generators, red.set.logical_x[i], set.logical_x[i]);
  }
  // The reduced generating set spans the same sign-exact group.
  REQUIRE(holo::same_group(red.set.generators, set.generators));
  std::vector<std::string> got, want;
  for (const auto& row : red.set.generators.rows) got.push_back(holo::to_string(row));
  for (const char* s : golden::kRingReducedGenerators) want.emplace_back(s);
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  REQUIRE(got == want);
  REQUIRE(holo::logical_set_problem(red.set).empty());
  // Dense action of the reduced representatives.
  std::mt19937_64 rng(1414);
  for (std::size_t i = 0; i < 4; ++i) {
    require_logical_action(code, red.set.logical_z[i], i, 'Z', rng);
    require_logical_action(code, red.set.logical_x[i], i, 'X', rng);
  }
}

TEST_CASE("greedy descent reduces weight when the coset is too large") {
  const LogicalSet set = holo::extract_logicals(ring_code());
  const holo::ReducedLogicalSet red = holo::reduce_weight(set, 4);  // 8 generators > limit
  REQUIRE_FALSE(red.exhaustive);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(red.set.logical_z[i].weight() <= set.logical_z[i].weight());
    REQUIRE(red.set.logical_x[i].weight() <= set.logical_x[i].weight());
    require_same_coset(set.generators, red.set.logical_z[i], set.logical_z[i]);
    require_same_coset(set.generators, red.set.logical_x[i], set.logical_x[i]);
  }
  REQUIRE(holo::logical_set_problem(red.set).empty());
}

TEST_CASE("the one-bulk-vertex code on the six-tensor has distance-three logicals") {
  const GraphCode code = holo::partition(holo::ame6_graph(), {0});
  REQUIRE(code.n() == 5);
  REQUIRE(code.k() == 1);
  const LogicalSet set = holo::extract_logicals(code);
  REQUIRE(holo::logical_set_problem(set).empty());
  const holo::ReducedLogicalSet red = holo::reduce_weight(set);
  REQUIRE(red.exhaustive);
  REQUIRE(red.set.logical_z[0].weight() == 3);
  REQUIRE(red.set.logical_x[0].weight() == 3);
  REQUIRE(holo::logical_set_problem(red.set).empty());
}

TEST_CASE("logical set text round trip") {
  const LogicalSet set = holo::extract_logicals(ring_code());
  const LogicalSet back = holo::logical_set_from_text(holo::to_text(set));
  REQUIRE(back.n == set.n);
  REQUIRE(back.k == set.k);
  REQUIRE(back.generators == set.generators);
  REQUIRE(back.logical_z == set.logical_z);
  REQUIRE(back.logical_x == set.logical_x);
  REQUIRE_THROWS_AS(holo::logical_set_from_text("nonsense"), holo::error);
}

TEST_CASE("logical_set_problem reports violations") {
  LogicalSet bad;
  bad.n = 2;
  bad.k = 1;
  bad.generators = holo::CheckMatrix(2);
  bad.generators.append(holo::parse_pauli("+ZZ"));
  bad.logical_z = {holo::parse_pauli("+ZI")};
  bad.logical_x = {holo::parse_pauli("+XX")};
  REQUIRE(holo::logical_set_problem(bad).empty());
  // Break the pairing: X-bar commutes with Z-bar.
  LogicalSet commuting = bad;
  commuting.logical_x = {holo::parse_pauli("+ZZ")};
  REQUIRE(holo::logical_set_problem(commuting) == "X-bar and Z-bar of one logical qubit commute");
  // A logical whose bits land in the generator span always breaks the
  // anticommutation pairing first (the symplectic form is bilinear), so the
  // commute message shadows the in-group one.
  LogicalSet inside = bad;
  inside.logical_z = {holo::parse_pauli("+ZZ")};
  REQUIRE(holo::logical_set_problem(inside) == "X-bar and Z-bar of one logical qubit commute");
  // X-bar anticommuting with the generator is caught before the pairing.
  LogicalSet clash = bad;
  clash.logical_x = {holo::parse_pauli("+XI")};
  REQUIRE(holo::logical_set_problem(clash) == "logical does not commute with a generator");
  LogicalSet short_gens = bad;
  short_gens.generators = holo::CheckMatrix(2);
  REQUIRE(holo::logical_set_problem(short_gens) == "generator count != n - k");
}
