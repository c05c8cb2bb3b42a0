#pragma once

// Local complementation orbits of graph states: the move itself, the
// single-qubit Clifford witness realizing it, circular-embedding chord
// metrics, and budgeted searches (orbit enumeration, edge-count
// minimization, equivalence with a composed witness).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "holo/circuit_synth.hpp"

namespace holo {

// Complement the subgraph induced by the neighborhood of v: every edge
// between two neighbors of v is toggled. Involution; names, roles and
// embedding are preserved.
inline GraphState local_complement(GraphState g, std::size_t v) {
  if (v >= g.n) throw error("local_complement: vertex out of range");
  const std::uint64_t nb = g.adj[v];
  for (std::size_t u = 0; u < g.n; ++u)
    if ((nb >> u) & 1u) g.adj[u] ^= nb & ~(std::uint64_t{1} << u);
  return g;
}

// Single-qubit Clifford circuit U with U|G> = |G*v> (exact stabilizer
// signs): sqrt(X) on v, S-dagger on each neighbor of v in the graph the
// move is applied to.
inline CliffordCircuit lc_witness(const GraphState& g, std::size_t v) {
  if (v >= g.n) throw error("lc_witness: vertex out of range");
  CliffordCircuit c(g.n);
  c.names = g.names;
  c.roles = g.roles;
  c.add(GateKind::SqrtX, v);
  for (std::size_t u = 0; u < g.n; ++u)
    if (g.has_edge(v, u)) c.add(GateKind::Sdg, u);
  return c;
}

// Replay a move sequence from `start`, composing the per-move witnesses.
inline CliffordCircuit witness_from_moves(const GraphState& start, const std::vector<std::size_t>& moves) {
  CliffordCircuit c(start.n);
  c.names = start.names;
  c.roles = start.roles;
  GraphState g = start;
  for (std::size_t v : moves) {
    c.extend(lc_witness(g, v).gates);
    g = local_complement(std::move(g), v);
  }
  return c;
}

inline GraphState apply_moves(GraphState g, const std::vector<std::size_t>& moves) {
  for (std::size_t v : moves) g = local_complement(std::move(g), v);
  return g;
}

// ---- circular embedding metrics ----
// The embedding lists the vertices placed on a circle (typically the
// boundary); edges between two embedded vertices are chords. The chord
// length is the circular distance between the endpoints' positions; a chord
// of length size/2 joins antipodal points and crosses the center.

inline std::size_t chord_length(const GraphState& g, std::size_t u, std::size_t w) {
  std::size_t pu = g.embedding.size(), pw = g.embedding.size();
  for (std::size_t i = 0; i < g.embedding.size(); ++i) {
    if (g.embedding[i] == u) pu = i;
    if (g.embedding[i] == w) pw = i;
  }
  if (pu == g.embedding.size() || pw == g.embedding.size())
    throw error("chord_length: vertex not in embedding");
  const std::size_t d = pu > pw ? pu - pw : pw - pu;
  return std::min(d, g.embedding.size() - d);
}

inline std::size_t max_chord(const GraphState& g) {
  std::vector<std::size_t> pos(g.n, g.n);
  for (std::size_t i = 0; i < g.embedding.size(); ++i) pos[g.embedding[i]] = i;
  std::size_t best = 0;
  for (const auto& [u, w] : g.edges()) {
    if (pos[u] == g.n || pos[w] == g.n) continue;
    const std::size_t d = pos[u] > pos[w] ? pos[u] - pos[w] : pos[w] - pos[u];
    best = std::max(best, std::min(d, g.embedding.size() - d));
  }
  return best;
}

inline std::size_t center_crossing_count(const GraphState& g) {
  std::vector<std::size_t> pos(g.n, g.n);
  for (std::size_t i = 0; i < g.embedding.size(); ++i) pos[g.embedding[i]] = i;
  std::size_t count = 0;
  for (const auto& [u, w] : g.edges()) {
    if (pos[u] == g.n || pos[w] == g.n) continue;
    const std::size_t d = pos[u] > pos[w] ? pos[u] - pos[w] : pos[w] - pos[u];
    if (2 * std::min(d, g.embedding.size() - d) == g.embedding.size()) ++count;
  }
  return count;
}

// ---- searches ----

namespace detail {

using AdjKey = std::vector<std::uint64_t>;

// Raw-adjacency counterparts of the GraphState operations, used by the
// large searches to avoid copying names/roles per stored graph.
inline void local_complement_adj(AdjKey& adj, std::size_t v) {
  const std::uint64_t nb = adj[v];
  for (std::size_t u = 0; u < adj.size(); ++u)
    if ((nb >> u) & 1u) adj[u] ^= nb & ~(std::uint64_t{1} << u);
}

inline std::size_t edge_count_adj(const AdjKey& adj) {
  std::size_t total = 0;
  for (std::uint64_t row : adj) total += static_cast<std::size_t>(std::popcount(row));
  return total / 2;
}

// pos[v] is the circle position of v, or npos for non-embedded vertices.
inline std::size_t max_chord_adj(const AdjKey& adj, const std::vector<std::size_t>& pos, std::size_t circle) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const std::size_t n = adj.size();
  std::size_t best = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (pos[u] == npos) continue;
    for (std::size_t w = u + 1; w < n; ++w) {
      if (!((adj[u] >> w) & 1u) || pos[w] == npos) continue;
      const std::size_t d = pos[u] > pos[w] ? pos[u] - pos[w] : pos[w] - pos[u];
      best = std::max(best, std::min(d, circle - d));
    }
  }
  return best;
}

inline std::size_t hash_adj(const AdjKey& adj) {
  std::size_t h = adj.size();
  for (std::uint64_t w : adj)
    h ^= std::hash<std::uint64_t>{}(w) + std::size_t{0x9e3779b97f4a7c15} + (h << 6) + (h >> 2);
  return h;
}

}  // namespace detail

// Breadth-first enumeration of the labeled local-complementation orbit,
// stopping after `budget` distinct graphs (truncated flag set when the
// orbit was not exhausted).
struct Orbit {
  std::vector<GraphState> graphs;                // graphs[0] == start
  std::vector<std::vector<std::size_t>> moves;   // move sequence reaching graphs[i]
  bool truncated = false;
};

inline Orbit explore_orbit(const GraphState& start, std::size_t budget) {
  Orbit orbit;
  std::map<detail::AdjKey, std::size_t> seen;
  std::queue<std::size_t> frontier;
  seen.emplace(start.adj, 0);
  orbit.graphs.push_back(start);
  orbit.moves.emplace_back();
  frontier.push(0);
  while (!frontier.empty()) {
    const std::size_t at = frontier.front();
    frontier.pop();
    for (std::size_t v = 0; v < start.n; ++v) {
      GraphState next = local_complement(orbit.graphs[at], v);
      if (seen.contains(next.adj)) continue;
      if (orbit.graphs.size() >= budget) {
        orbit.truncated = true;
        return orbit;
      }
      seen.emplace(next.adj, orbit.graphs.size());
      auto path = orbit.moves[at];
      path.push_back(v);
      orbit.graphs.push_back(std::move(next));
      orbit.moves.push_back(std::move(path));
      frontier.push(orbit.graphs.size() - 1);
    }
  }
  return orbit;
}

// Best-first minimization over the orbit: states are ranked by
// (edge count, max chord) lexicographically; the search repeatedly expands
// the best unexpanded state, for up to `budget` expansions. `visited`
// reports the number of distinct graphs stored; `truncated` is set when the
// budget ran out before the orbit was exhausted.
struct MinimizeResult {
  GraphState graph;
  std::vector<std::size_t> moves;
  bool truncated = false;
  std::size_t visited = 0;
};

inline MinimizeResult minimize_edges(const GraphState& start, std::size_t budget) {
  using Key = std::pair<std::size_t, std::size_t>;
  const std::size_t n = start.n;
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos(n, npos);
  for (std::size_t i = 0; i < start.embedding.size(); ++i) pos[start.embedding[i]] = i;
  const std::size_t circle = start.embedding.size();
  auto rank = [&](const detail::AdjKey& adj) {
    return Key{detail::edge_count_adj(adj), detail::max_chord_adj(adj, pos, circle)};
  };
  // Node storage: the adjacency doubles as the dedup key; paths are
  // reconstructed through parent links at the end.
  std::vector<detail::AdjKey> adjs{start.adj};
  std::vector<std::uint32_t> parent{0};
  std::vector<std::uint8_t> step{0};
  auto hash_id = [&](std::uint32_t id) { return detail::hash_adj(adjs[id]); };
  auto eq_id = [&](std::uint32_t a, std::uint32_t b) { return adjs[a] == adjs[b]; };
  std::unordered_set<std::uint32_t, decltype(hash_id), decltype(eq_id)> seen(1 << 12, hash_id, eq_id);
  seen.insert(0);
  struct Entry {
    Key key;
    std::uint32_t id;
    bool operator>(const Entry& o) const { return key > o.key || (key == o.key && id > o.id); }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
  Key best_key = rank(start.adj);
  std::uint32_t best_id = 0;
  open.push(Entry{best_key, 0});
  MinimizeResult result;
  std::size_t expansions = 0;
  while (!open.empty()) {
    if (expansions == budget) {
      result.truncated = true;
      break;
    }
    const Entry cur = open.top();
    open.pop();
    ++expansions;
    const detail::AdjKey base = adjs[cur.id];  // copy: adjs grows below
    for (std::size_t v = 0; v < n; ++v) {
      if (base[v] == 0) continue;  // complementing at an isolated vertex is the identity
      detail::AdjKey next = base;
      detail::local_complement_adj(next, v);
      adjs.push_back(std::move(next));
      const auto id = static_cast<std::uint32_t>(adjs.size() - 1);
      if (!seen.insert(id).second) {
        adjs.pop_back();
        continue;
      }
      parent.push_back(cur.id);
      step.push_back(static_cast<std::uint8_t>(v));
      const Key key = rank(adjs[id]);
      if (key < best_key) {
        best_key = key;
        best_id = id;
      }
      open.push(Entry{key, id});
    }
  }
  for (std::uint32_t id = best_id; id != 0; id = parent[id]) result.moves.push_back(step[id]);
  std::reverse(result.moves.begin(), result.moves.end());
  result.graph = apply_moves(start, result.moves);
  result.visited = adjs.size();
  return result;
}

// Decide whether two graph states are related by local complementations via
// bidirectional breadth-first search. On success the witness circuit maps
// |a> to |b> (composed forward moves from a, then the reversed moves from
// b, each inverted by applying the same complementation again).
struct EquivalenceResult {
  bool equivalent = false;
  bool truncated = false;
  CliffordCircuit witness;
  std::vector<std::size_t> moves_a;  // a -> meeting graph
  std::vector<std::size_t> moves_b;  // b -> meeting graph
};

inline EquivalenceResult lc_equivalent(const GraphState& a, const GraphState& b, std::size_t budget) {
  EquivalenceResult result;
  if (a.n != b.n) return result;
  struct Side {
    std::vector<GraphState> graphs;
    std::vector<std::vector<std::size_t>> moves;
    std::map<detail::AdjKey, std::size_t> seen;
    std::queue<std::size_t> frontier;
    std::size_t n = 0;
    void init(const GraphState& g) {
      n = g.n;
      graphs.push_back(g);
      moves.emplace_back();
      seen.emplace(g.adj, 0);
      frontier.push(0);
    }
    // Expands one state; returns the new ids.
    std::vector<std::size_t> step(std::size_t budget_left) {
      std::vector<std::size_t> fresh;
      if (frontier.empty()) return fresh;
      const std::size_t at = frontier.front();
      frontier.pop();
      for (std::size_t v = 0; v < n; ++v) {
        GraphState next = local_complement(graphs[at], v);
        if (seen.contains(next.adj)) continue;
        if (graphs.size() >= budget_left) return fresh;
        const std::size_t id = graphs.size();
        seen.emplace(next.adj, id);
        auto path = moves[at];
        path.push_back(v);
        graphs.push_back(std::move(next));
        moves.push_back(std::move(path));
        frontier.push(id);
        fresh.push_back(id);
      }
      return fresh;
    }
  };
  Side sa, sb;
  sa.init(a);
  sb.init(b);
  const std::size_t half = budget / 2 + 1;
  auto meet = [&](std::size_t ida, std::size_t idb) {
    result.equivalent = true;
    result.moves_a = sa.moves[ida];
    result.moves_b = sb.moves[idb];
    const CliffordCircuit wa = witness_from_moves(a, result.moves_a);
    const CliffordCircuit wb = witness_from_moves(b, result.moves_b);
    result.witness = wa;
    result.witness.extend(dagger(wb).gates);
    result.witness.names = a.names;
    result.witness.roles = a.roles;
  };
  if (auto it = sb.seen.find(a.adj); it != sb.seen.end()) {
    meet(0, it->second);
    return result;
  }
  while (!sa.frontier.empty() || !sb.frontier.empty()) {
    for (std::size_t ida : sa.step(half))
      if (auto it = sb.seen.find(sa.graphs[ida].adj); it != sb.seen.end()) {
        meet(ida, it->second);
        return result;
      }
    for (std::size_t idb : sb.step(half))
      if (auto it = sa.seen.find(sb.graphs[idb].adj); it != sa.seen.end()) {
        meet(it->second, idb);
        return result;
      }
    if (sa.graphs.size() >= half && sb.graphs.size() >= half) break;
  }
  result.truncated = sa.graphs.size() >= half || sb.graphs.size() >= half;
  return result;
}

}  // namespace holo
