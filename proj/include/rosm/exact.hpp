#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

#include "rosm/graph.hpp"
#include "rosm/matching.hpp"

namespace rosm {

namespace detail {

// Compressed adjacency over [0, n). Neighbours keep input order so that
// every search below is deterministic for a fixed edge ordering.
struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<VertexId> target;

  Adjacency(std::size_t n, std::span<const Edge> edges, bool both_directions) : offset(n + 1, 0) {
    for (const Edge& e : edges) {
      ++offset[e.u + 1];
      if (both_directions) ++offset[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
    target.resize(offset[n]);
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (const Edge& e : edges) {
      target[fill[e.u]++] = e.v;
      if (both_directions) target[fill[e.v]++] = e.u;
    }
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {target.data() + offset[v], offset[v + 1] - offset[v]};
  }
};

}  // namespace detail

/// Maximum-cardinality matching of a bipartite edge set by repeated
/// shortest-augmenting-path phases (Hopcroft-Karp). Edges may come in
/// either orientation; the result stores them as (A-side, B-side).
/// Throws GraphError if an edge does not cross `bip`.
inline Matching max_matching_bipartite(std::span<const Edge> edges, const Bipartition& bip) {
  const std::size_t n = bip.size();
  std::vector<Edge> oriented;
  oriented.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw GraphError("bipartite oracle: endpoint outside bipartition");
    if (!bip.crosses(e)) throw GraphError("bipartite oracle: edge does not cross the bipartition");
    oriented.push_back(bip.orient(e));
  }
  detail::Adjacency adj(n, oriented, /*both_directions=*/false);

  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<VertexId> mate(n, kNoVertex);
  std::vector<std::size_t> dist(n, kInf);
  std::vector<VertexId> left;
  for (VertexId v = 0; v < n; ++v) {
    if (bip.on_a(v) && !adj.neighbors(v).empty()) left.push_back(v);
  }

  auto bfs = [&]() {
    std::deque<VertexId> queue;
    bool found = false;
    for (VertexId a : left) {
      if (mate[a] == kNoVertex) {
        dist[a] = 0;
        queue.push_back(a);
      } else {
        dist[a] = kInf;
      }
    }
    while (!queue.empty()) {
      VertexId a = queue.front();
      queue.pop_front();
      for (VertexId b : adj.neighbors(a)) {
        VertexId next = mate[b];
        if (next == kNoVertex) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[a] + 1;
          queue.push_back(next);
        }
      }
    }
    return found;
  };

  // Iterative layered DFS; `it[a]` is the next neighbour index to try.
  std::vector<std::size_t> it(n, 0);
  std::vector<VertexId> stack;
  auto dfs = [&](VertexId root) {
    stack.clear();
    stack.push_back(root);
    while (!stack.empty()) {
      VertexId a = stack.back();
      auto nb = adj.neighbors(a);
      bool advanced = false;
      while (it[a] < nb.size()) {
        VertexId b = nb[it[a]];
        VertexId next = mate[b];
        if (next == kNoVertex) {
          // Augment along the stack: each stacked A vertex takes the B
          // vertex its cursor points at.
          for (auto s = stack.rbegin(); s != stack.rend(); ++s) {
            VertexId sa = *s;
            VertexId sb = adj.neighbors(sa)[it[sa]];
            mate[sa] = sb;
            mate[sb] = sa;
          }
          return true;
        }
        if (dist[next] == dist[a] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++it[a];
      }
      if (!advanced) {
        dist[a] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++it[stack.back()];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (VertexId a : left) {
      if (mate[a] == kNoVertex) dfs(a);
    }
  }

  Matching result(n);
  for (VertexId a : left) {
    if (mate[a] != kNoVertex) result.add({a, mate[a]});
  }
  return result;
}

/// Maximum-cardinality matching in a general graph by Edmonds' blossom
/// contraction, one BFS per free vertex in index order after a greedy
/// warm start in edge order.
inline Matching max_matching_general(std::size_t n, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw GraphError("general oracle: endpoint outside vertex range");
    if (e.u == e.v) throw GraphError("general oracle: self-loop");
  }
  detail::Adjacency adj(n, edges, /*both_directions=*/true);

  std::vector<VertexId> match(n, kNoVertex), parent(n), base(n);
  std::vector<std::uint8_t> used(n), blossom(n);
  std::vector<VertexId> queue;
  queue.reserve(n);

  for (const Edge& e : edges) {
    if (match[e.u] == kNoVertex && match[e.v] == kNoVertex) {
      match[e.u] = e.v;
      match[e.v] = e.u;
    }
  }

  auto lca = [&](VertexId a, VertexId b) {
    std::vector<std::uint8_t> seen(n, 0);
    for (;;) {
      a = base[a];
      seen[a] = 1;
      if (match[a] == kNoVertex) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[match[b]];
    }
  };

  auto mark_path = [&](VertexId v, VertexId b, VertexId child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  };

  // Returns the free vertex that ends an augmenting path from root, or
  // kNoVertex. parent[] then encodes the path.
  auto find_path = [&](VertexId root) -> VertexId {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), kNoVertex);
    for (VertexId i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    queue.clear();
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      for (VertexId to : adj.neighbors(v)) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != kNoVertex && parent[match[to]] != kNoVertex)) {
          VertexId cur_base = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (VertexId i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur_base;
              if (!used[i]) {
                used[i] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent[to] == kNoVertex) {
          parent[to] = v;
          if (match[to] == kNoVertex) return to;
          used[match[to]] = 1;
          queue.push_back(match[to]);
        }
      }
    }
    return kNoVertex;
  };

  for (VertexId root = 0; root < n; ++root) {
    if (match[root] != kNoVertex || adj.neighbors(root).empty()) continue;
    VertexId v = find_path(root);
    while (v != kNoVertex) {
      VertexId pv = parent[v];
      VertexId ppv = match[pv];
      match[v] = pv;
      match[pv] = v;
      v = ppv;
    }
  }

  Matching result(n);
  for (VertexId v = 0; v < n; ++v) {
    if (match[v] != kNoVertex && v < match[v]) result.add({v, match[v]});
  }
  return result;
}

/// Raised when an exhaustive oracle is asked to handle too large an input.
class OracleRefusal : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kBruteForceMaxVertices = 20;

/// Exact maximum matching size by exhaustive search: the lowest uncovered
/// vertex is either left unmatched or matched to each free neighbour in
/// turn, with results memoised per covered-vertex set. Refuses inputs
/// touching more than 20 distinct vertices.
inline std::size_t max_matching_bruteforce(std::span<const Edge> edges) {
  std::vector<VertexId> ids;
  for (const Edge& e : edges) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > kBruteForceMaxVertices) {
    throw OracleRefusal("brute-force oracle: " + std::to_string(ids.size()) +
                        " vertices exceeds the limit of " +
                        std::to_string(kBruteForceMaxVertices));
  }
  const std::size_t k = ids.size();
  if (k == 0) return 0;
  auto local = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  std::vector<std::uint32_t> adj(k, 0);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    auto a = local(e.u), b = local(e.v);
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  const std::uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1u);
  std::vector<std::int8_t> memo(std::size_t{1} << k, -1);

  auto solve = [&](auto&& self, std::uint32_t covered) -> int {
    if (covered == full) return 0;
    auto& slot = memo[covered];
    if (slot >= 0) return slot;
    const int v = __builtin_ctz(~covered & full);
    const std::uint32_t with_v = covered | (1u << v);
    int best = self(self, with_v);
    for (std::uint32_t free = adj[v] & ~covered; free != 0; free &= free - 1) {
      const int w = __builtin_ctz(free);
      best = std::max(best, 1 + self(self, with_v | (1u << w)));
    }
    slot = static_cast<std::int8_t>(best);
    return best;
  };
  return static_cast<std::size_t>(solve(solve, 0));
}

}  // namespace rosm
