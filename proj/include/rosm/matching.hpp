#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rosm/graph.hpp"

namespace rosm {

/// A set of vertex-disjoint edges over a fixed vertex range, stored as a
/// symmetric partner array. Each edge keeps the orientation it was added
/// with; equality ignores orientation.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n) : partner_(n, kNoVertex), head_(n, 0) {}

  /// Throws std::invalid_argument if two edges share a vertex.
  static Matching from_edges(std::size_t n, std::span<const Edge> edges) {
    Matching m(n);
    for (const Edge& e : edges) m.add(e);
    return m;
  }
  static Matching from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t num_vertices() const { return partner_.size(); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool matched(VertexId v) const { return partner_[v] != kNoVertex; }
  VertexId partner(VertexId v) const { return partner_[v]; }

  /// Orientation-free membership test.
  bool contains(const Edge& e) const {
    return e.u < partner_.size() && e.v != kNoVertex && partner_[e.u] == e.v;
  }
  bool can_add(const Edge& e) const { return e.u != e.v && !matched(e.u) && !matched(e.v); }

  void add(const Edge& e) {
    check_range(e);
    if (!can_add(e)) {
      std::ostringstream os;
      os << "matching: edge " << e << " conflicts with an existing edge";
      throw std::invalid_argument(os.str());
    }
    partner_[e.u] = e.v;
    partner_[e.v] = e.u;
    head_[e.u] = 1;
    ++size_;
  }

  void remove(const Edge& e) {
    check_range(e);
    if (!contains(e)) {
      std::ostringstream os;
      os << "matching: edge " << e << " is not in the matching";
      throw std::invalid_argument(os.str());
    }
    partner_[e.u] = kNoVertex;
    partner_[e.v] = kNoVertex;
    head_[e.u] = 0;
    head_[e.v] = 0;
    --size_;
  }

  /// The edge covering v, in stored orientation. Precondition: matched(v).
  Edge edge_at(VertexId v) const {
    const VertexId w = partner_[v];
    return head_[v] ? Edge{v, w} : Edge{w, v};
  }

  /// Edges in stored orientation, ordered by their first endpoint.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(size_);
    for (VertexId v = 0; v < partner_.size(); ++v) {
      if (partner_[v] != kNoVertex && head_[v]) out.push_back({v, partner_[v]});
    }
    return out;
  }

  /// Raw partner array, kNoVertex for unmatched vertices.
  std::span<const VertexId> partners() const { return partner_; }

  friend bool operator==(const Matching& a, const Matching& b) { return a.partner_ == b.partner_; }

 private:
  void check_range(const Edge& e) const {
    if (e.u >= partner_.size() || e.v >= partner_.size()) {
      std::ostringstream os;
      os << "matching: edge " << e << " outside vertex range " << partner_.size();
      throw std::out_of_range(os.str());
    }
  }

  std::vector<VertexId> partner_;
  std::vector<std::uint8_t> head_;
  std::size_t size_ = 0;
};

/// Violations are data: an empty list means the input is valid.
struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }

  void add(std::string msg) { violations.push_back(std::move(msg)); }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v;
    }
    return s;
  }
};

namespace detail {
inline std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << e;
  return os.str();
}
}  // namespace detail

/// Checks a candidate edge list against g: every edge present, no vertex
/// covered twice.
inline ValidationResult validate_matching(const Graph& g, std::span<const Edge> edges) {
  ValidationResult r;
  std::unordered_map<VertexId, Edge> owner;
  for (const Edge& e : edges) {
    if (e.u >= g.num_vertices() || e.v >= g.num_vertices()) {
      r.add("edge " + detail::edge_str(e) + " has an endpoint outside the graph");
      continue;
    }
    if (!g.contains(e)) r.add("edge " + detail::edge_str(e) + " is absent from the graph");
    for (VertexId x : {e.u, e.v}) {
      auto [it, fresh] = owner.try_emplace(x, e);
      if (!fresh) {
        r.add("vertex " + std::to_string(x) + " shared by " + detail::edge_str(it->second) +
              " and " + detail::edge_str(e));
      }
    }
  }
  return r;
}

inline ValidationResult validate_matching(const Graph& g, const Matching& m) {
  ValidationResult r;
  if (m.num_vertices() != g.num_vertices()) {
    r.add("matching spans " + std::to_string(m.num_vertices()) + " vertices, graph has " +
          std::to_string(g.num_vertices()));
    return r;
  }
  auto p = m.partners();
  std::size_t matched = 0;
  for (VertexId v = 0; v < p.size(); ++v) {
    if (p[v] == kNoVertex) continue;
    ++matched;
    if (p[v] >= p.size() || p[p[v]] != v) {
      r.add("partner of " + std::to_string(v) + " is not symmetric");
    }
  }
  if (matched != 2 * m.size()) r.add("size counter disagrees with partner array");
  for (const Edge& e : m.edges()) {
    if (!g.contains(e)) r.add("edge " + detail::edge_str(e) + " is absent from the graph");
  }
  return r;
}

enum class AugKind { ThreeAug, FiveAug };

/// Alternating path of 3 or 5 edges: non-matching, matching, ...,
/// non-matching. Consecutive edges share one vertex.
struct AugPath {
  std::vector<Edge> edges;

  AugKind kind() const { return edges.size() == 5 ? AugKind::FiveAug : AugKind::ThreeAug; }

  static AugPath three(Edge wing_a, Edge matched, Edge wing_b) {
    return AugPath{{wing_a, matched, wing_b}};
  }
  static AugPath five(Edge upper, Edge e0, Edge connector, Edge e1, Edge lower) {
    return AugPath{{upper, e0, connector, e1, lower}};
  }

  /// Vertex sequence along the path (edges + 1 entries), or empty if the
  /// edges do not chain.
  std::vector<VertexId> vertices() const {
    std::vector<VertexId> seq;
    if (edges.empty()) return seq;
    if (edges.size() == 1) return {edges[0].u, edges[0].v};
    const Edge& first = edges[0];
    const Edge& second = edges[1];
    VertexId start;
    if (second.touches(first.v)) {
      start = first.u;
    } else if (second.touches(first.u)) {
      start = first.v;
    } else {
      return {};
    }
    seq.push_back(start);
    VertexId cur = start;
    for (const Edge& e : edges) {
      if (!e.touches(cur)) return {};
      cur = e.other(cur);
      seq.push_back(cur);
    }
    return seq;
  }
};

struct AugPathSet {
  std::vector<AugPath> paths;

  std::size_t size() const { return paths.size(); }
  bool empty() const { return paths.empty(); }
};

inline ValidationResult validate_aug_path(const Matching& m, const AugPath& path) {
  ValidationResult r;
  const auto k = path.edges.size();
  if (k != 3 && k != 5) {
    r.add("augmenting path must have 3 or 5 edges, got " + std::to_string(k));
    return r;
  }
  for (const Edge& e : path.edges) {
    if (e.u >= m.num_vertices() || e.v >= m.num_vertices()) {
      r.add("path edge " + detail::edge_str(e) + " outside vertex range");
      return r;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const bool in_m = m.contains(path.edges[i]);
    if (i % 2 == 0 && in_m) r.add("edge " + detail::edge_str(path.edges[i]) + " should be unmatched");
    if (i % 2 == 1 && !in_m) r.add("edge " + detail::edge_str(path.edges[i]) + " should be matched");
  }
  auto seq = path.vertices();
  if (seq.empty()) {
    r.add("path edges do not chain");
    return r;
  }
  auto sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    r.add("path revisits a vertex");
  }
  if (m.matched(seq.front())) r.add("endpoint " + std::to_string(seq.front()) + " is matched");
  if (m.matched(seq.back())) r.add("endpoint " + std::to_string(seq.back()) + " is matched");
  return r;
}

/// Each path valid against m, and paths pairwise vertex-disjoint.
inline ValidationResult validate_aug_paths(const Matching& m, const AugPathSet& set) {
  ValidationResult r;
  std::vector<std::uint8_t> used(m.num_vertices(), 0);
  for (std::size_t i = 0; i < set.paths.size(); ++i) {
    auto one = validate_aug_path(m, set.paths[i]);
    for (auto& v : one.violations) r.add("path " + std::to_string(i) + ": " + v);
    if (!one.ok()) continue;
    for (VertexId x : set.paths[i].vertices()) {
      if (used[x]) r.add("path " + std::to_string(i) + " reuses vertex " + std::to_string(x));
      used[x] = 1;
    }
  }
  return r;
}

/// m Δ E(path) without validation. Applying the same path twice restores m.
inline Matching symmetric_difference(Matching m, const AugPath& path) {
  std::vector<Edge> incoming;
  for (const Edge& e : path.edges) {
    if (m.contains(e)) {
      m.remove(e);
    } else {
      incoming.push_back(e);
    }
  }
  for (const Edge& e : incoming) m.add(e);
  return m;
}

/// m Δ (union of paths). Throws std::logic_error if `set` is not a valid
/// disjoint family of augmenting paths for m.
inline Matching apply_augmenting_paths(Matching m, const AugPathSet& set) {
  if (auto check = validate_aug_paths(m, set); !check.ok()) {
    throw std::logic_error("apply_augmenting_paths: " + check.summary());
  }
  for (const AugPath& p : set.paths) m = symmetric_difference(std::move(m), p);
  return m;
}

/// Order-preserving subsequence of edges satisfying pred.
template <class Pred>
std::vector<Edge> filter_edges(std::span<const Edge> edges, Pred&& pred) {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (pred(e)) out.push_back(e);
  }
  return out;
}

}  // namespace rosm
