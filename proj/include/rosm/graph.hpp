#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace rosm {

/// Dense vertex index in [0, n).
using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Raised for malformed graph input: self-loops, out-of-range endpoints,
/// edges that do not cross a declared bipartition.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An undirected edge. For bipartite graphs the stored orientation is
/// always (A-side, B-side); for general graphs it is (smaller, larger).
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;

  constexpr bool touches(VertexId x) const { return u == x || v == x; }
  constexpr bool shares_vertex(const Edge& o) const {
    return touches(o.u) || touches(o.v);
  }
  constexpr VertexId other(VertexId x) const { return x == u ? v : u; }
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '(' << e.u << ',' << e.v << ')';
}

/// Orientation-free 64-bit key; (u,v) and (v,u) map to the same value.
constexpr std::uint64_t edge_key(const Edge& e) {
  const auto lo = static_cast<std::uint64_t>(std::min(e.u, e.v));
  const auto hi = static_cast<std::uint64_t>(std::max(e.u, e.v));
  return (lo << 32) | hi;
}

enum class Side : std::uint8_t { A, B };

class Bipartition {
 public:
  Bipartition() = default;
  explicit Bipartition(std::vector<Side> sides) : side_(std::move(sides)) {}

  /// Vertices [0, n_a) on side A, [n_a, n) on side B.
  static Bipartition split(std::size_t n, std::size_t n_a) {
    if (n_a > n) throw GraphError("bipartition: side A larger than vertex count");
    std::vector<Side> s(n, Side::B);
    std::fill_n(s.begin(), n_a, Side::A);
    return Bipartition(std::move(s));
  }

  std::size_t size() const { return side_.size(); }
  Side side(VertexId v) const { return side_.at(v); }
  bool on_a(VertexId v) const { return side(v) == Side::A; }
  bool crosses(const Edge& e) const { return side(e.u) != side(e.v); }

  /// Returns e with its A-side endpoint first. Precondition: crosses(e).
  Edge orient(const Edge& e) const { return on_a(e.u) ? e : Edge{e.v, e.u}; }

  std::size_t count_a() const {
    return static_cast<std::size_t>(std::count(side_.begin(), side_.end(), Side::A));
  }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  std::vector<Side> side_;
};

/// Immutable simple graph with an optional bipartition.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes `edges`. Duplicate edges (in either
  /// orientation) keep their first occurrence; the rest are dropped and
  /// counted in duplicates_dropped().
  static Graph build(std::size_t n, std::span<const Edge> edges,
                     std::optional<Bipartition> bip = std::nullopt) {
    if (n > static_cast<std::size_t>(kNoVertex)) throw GraphError("graph: too many vertices");
    if (bip && bip->size() != n) {
      throw GraphError("graph: bipartition size " + std::to_string(bip->size()) +
                       " does not match vertex count " + std::to_string(n));
    }
    Graph g;
    g.n_ = n;
    g.bip_ = std::move(bip);
    g.edges_.reserve(edges.size());
    g.index_.reserve(edges.size() * 2);
    for (const Edge& raw : edges) {
      if (raw.u >= n || raw.v >= n) {
        throw GraphError("graph: edge (" + std::to_string(raw.u) + "," + std::to_string(raw.v) +
                         ") has an endpoint outside [0," + std::to_string(n) + ")");
      }
      if (raw.u == raw.v) throw GraphError("graph: self-loop at vertex " + std::to_string(raw.u));
      Edge e = raw;
      if (g.bip_) {
        if (!g.bip_->crosses(e)) {
          throw GraphError("graph: edge (" + std::to_string(raw.u) + "," +
                           std::to_string(raw.v) + ") does not cross the bipartition");
        }
        e = g.bip_->orient(e);
      } else if (e.u > e.v) {
        std::swap(e.u, e.v);
      }
      if (!g.index_.insert(edge_key(e)).second) {
        ++g.duplicates_;
        continue;
      }
      g.edges_.push_back(e);
    }
    return g;
  }

  static Graph build(std::size_t n, std::initializer_list<Edge> edges,
                     std::optional<Bipartition> bip = std::nullopt) {
    return build(n, std::span<const Edge>(edges.begin(), edges.size()), std::move(bip));
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const std::optional<Bipartition>& bipartition() const { return bip_; }
  bool is_bipartite() const { return bip_.has_value(); }
  std::size_t duplicates_dropped() const { return duplicates_; }

  bool contains(const Edge& e) const { return index_.contains(edge_key(e)); }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::optional<Bipartition> bip_;
  std::unordered_set<std::uint64_t> index_;
  std::size_t duplicates_ = 0;
};

/// log2(n) as used for every "log n" parameter; clamped to at least 1.
inline double log2_vertices(std::size_t n) {
  return n < 2 ? 1.0 : std::max(1.0, std::log2(static_cast<double>(n)));
}

}  // namespace rosm
