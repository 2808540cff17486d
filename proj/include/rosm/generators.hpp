#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <utility>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosm/graph.hpp"
#include "rosm/stream.hpp"

namespace rosm {

/// Bipartite graph on sides a_1..a_n (ids 0..n-1) and b_1..b_n (ids
/// n..2n-1) with a_i b_j present iff i == j, or i <= n/2 and j > n/2.
/// Greedy in random order tends to pick the dense block and lose half of
/// the perfect matching a_i b_i.
inline Graph gen_konrad_hard(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("konrad: n must be even and >= 2, got " + std::to_string(n));
  }
  const std::size_t half = n / 2;
  std::vector<Edge> edges;
  edges.reserve(n + half * half);
  auto b = [n](std::size_t j) { return static_cast<VertexId>(n + j); };
  for (std::size_t i = 0; i < n; ++i) edges.push_back({static_cast<VertexId>(i), b(i)});
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = half; j < n; ++j) edges.push_back({static_cast<VertexId>(i), b(j)});
  }
  return Graph::build(2 * n, edges, Bipartition::split(2 * n, n));
}

/// Perfect matching a_i b_i plus each other (a_i, b_j) with probability p.
/// Side A is 0..n-1, side B is n..2n-1.
inline Graph gen_planted_bipartite(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("planted: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("planted: p must be in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Edge e{static_cast<VertexId>(i), static_cast<VertexId>(n + j)};
      if (i == j) {
        edges.push_back(e);
      } else if (rng.unit() < p) {
        edges.push_back(e);
      }
    }
  }
  return Graph::build(2 * n, edges, Bipartition::split(2 * n, n));
}

/// G(n, p): each pair u < v present independently with probability p.
inline Graph gen_random_general(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must be in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.unit() < p) edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
  }
  return Graph::build(n, edges);
}

/// Side assignment in which every edge crosses, or nullopt if the graph
/// has an odd cycle. The lowest id of each component goes to side A. On
/// failure *conflict is set to the index of an edge closing an odd cycle.
inline std::optional<Bipartition> two_colouring(std::size_t n, std::span<const Edge> edges,
                                                std::size_t* conflict = nullptr) {
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
  std::vector<int> colour(n, -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId v = queue[head];
      for (auto [w, idx] : adj[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          if (conflict) *conflict = idx;
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> sides(n);
  for (std::size_t v = 0; v < n; ++v) sides[v] = colour[v] == 0 ? Side::A : Side::B;
  return Bipartition(std::move(sides));
}

/// Parse or validation failure while reading an edge list. line() is
/// 1-based, 0 when the problem is not tied to a line.
class EdgeListError : public std::runtime_error {
 public:
  EdgeListError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct EdgeListLoad {
  Graph graph;
  /// Repeated edges that were dropped.
  std::size_t duplicates = 0;
};

/// Reads the text edge-list format:
///
///   <n> <m> <bipartite|general>
///   <n_A>            (bipartite only, optional; vertices 0..n_A-1 form
///                     side A, otherwise sides come from a 2-colouring)
///   <u> <v>          (m lines, 0-based)
///
/// Blank lines and anything after '#' are ignored.
inline EdgeListLoad parse_edgelist(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  // Next non-empty line with comments stripped, or false at end of input.
  auto next = [&](std::istringstream& fields) {
    while (std::getline(in, raw)) {
      ++line_no;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      fields = std::istringstream(raw);
      return true;
    }
    return false;
  };
  auto no_trailing = [&](std::istringstream& fields) {
    std::string extra;
    if (fields >> extra) throw EdgeListError(line_no, "unexpected trailing token '" + extra + "'");
  };

  std::istringstream fields;
  if (!next(fields)) throw EdgeListError(0, "empty input: missing header");
  long long n = -1, m = -1;
  std::string kind;
  if (!(fields >> n >> m >> kind) || n < 0 || m < 0) {
    throw EdgeListError(line_no, "header must be '<n> <m> <bipartite|general>'");
  }
  no_trailing(fields);
  if (kind != "bipartite" && kind != "general") {
    throw EdgeListError(line_no, "graph kind must be 'bipartite' or 'general', got '" + kind + "'");
  }

  // For bipartite input the side-A size line is optional: a first data
  // line with two tokens is already an edge, and sides are then inferred.
  std::optional<Bipartition> bip;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  bool pending = false;
  if (kind == "bipartite") {
    if (next(fields)) {
      std::vector<std::string> tokens;
      for (std::string t; fields >> t;) tokens.push_back(t);
      if (tokens.size() == 1) {
        long long n_a = -1;
        std::size_t used = 0;
        try {
          n_a = std::stoll(tokens[0], &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tokens[0].size() || n_a < 0 || n_a > n) {
          throw EdgeListError(line_no, "side-A size must be an integer in [0, n]");
        }
        bip = Bipartition::split(static_cast<std::size_t>(n), static_cast<std::size_t>(n_a));
      } else {
        fields = std::istringstream(raw);
        pending = true;
      }
    } else if (m > 0) {
      throw EdgeListError(line_no, "expected " + std::to_string(m) + " edges, found 0");
    }
  }

  std::vector<std::size_t> edge_lines;
  for (long long i = 0; i < m; ++i) {
    if (!pending && !next(fields)) {
      throw EdgeListError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                       std::to_string(i));
    }
    pending = false;
    long long u = -1, v = -1;
    if (!(fields >> u >> v)) throw EdgeListError(line_no, "edge line must be '<u> <v>'");
    no_trailing(fields);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw EdgeListError(line_no, "endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw EdgeListError(line_no, "self-loop on vertex " + std::to_string(u));
    const Edge e{static_cast<VertexId>(u), static_cast<VertexId>(v)};
    if (bip && !bip->crosses(e)) {
      throw EdgeListError(line_no, "edge " + std::to_string(u) + " " + std::to_string(v) +
                                       " does not cross the declared bipartition");
    }
    edges.push_back(e);
    edge_lines.push_back(line_no);
  }
  if (kind == "bipartite" && !bip) {
    std::size_t bad = 0;
    bip = two_colouring(static_cast<std::size_t>(n), edges, &bad);
    if (!bip) {
      throw EdgeListError(edge_lines[bad], "declared bipartite but edge " +
                                               std::to_string(edges[bad].u) + " " +
                                               std::to_string(edges[bad].v) + " closes an odd cycle");
    }
  }
  std::istringstream rest;
  if (next(rest)) throw EdgeListError(line_no, "more edge lines than the header declares");

  Graph g = Graph::build(static_cast<std::size_t>(n), edges, bip);
  const std::size_t dups = g.duplicates_dropped();
  return EdgeListLoad{std::move(g), dups};
}

inline EdgeListLoad load_edgelist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EdgeListError(0, "cannot open '" + path + "'");
  return parse_edgelist(in);
}

inline void write_edgelist(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << ' '
      << (g.is_bipartite() ? "bipartite" : "general") << '\n';
  if (g.is_bipartite()) {
    // The side-A line can only describe a prefix of the ids; otherwise the
    // reader recovers the sides by 2-colouring.
    const auto& bip = *g.bipartition();
    const std::size_t n_a = bip.count_a();
    bool prefix = true;
    for (VertexId v = 0; v < g.num_vertices() && prefix; ++v) prefix = bip.on_a(v) == (v < n_a);
    if (prefix) out << n_a << '\n';
  }
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace rosm
