#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rosm/matching.hpp"

namespace rosm {

/// Raised when a wing/connector matching breaks its input contract.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Augmenting-path candidates before disjointness filtering. Unlike
/// AugPathSet, members may share vertices.
using AugPathList = std::vector<AugPath>;

/// The matching being augmented together with its upper wings (p1, edges
/// A(M0) x unmatched-B) and lower wings (q1, edges unmatched-A x B(M0)).
///
/// All edges are oriented (A-side, B-side). M_P is the set of m0 edges
/// whose A endpoint carries an upper wing; M_Q those whose B endpoint
/// carries a lower wing.
struct WingContext {
  const Matching& m0;
  const Matching& p1;
  const Matching& q1;

  bool a_in_m0(VertexId a) const { return m0.matched(a); }
  bool b_in_m0(VertexId b) const { return m0.matched(b); }

  /// b is the B endpoint of an M_P edge.
  bool b_in_mp(VertexId b) const { return m0.matched(b) && p1.matched(m0.partner(b)); }
  /// a is the A endpoint of an M_Q edge.
  bool a_in_mq(VertexId a) const { return m0.matched(a) && q1.matched(m0.partner(a)); }

  std::vector<Edge> mp_edges() const {
    std::vector<Edge> out;
    for (const Edge& e : m0.edges()) {
      if (p1.matched(e.u)) out.push_back(e);
    }
    return out;
  }
  std::vector<Edge> mq_edges() const {
    std::vector<Edge> out;
    for (const Edge& e : m0.edges()) {
      if (q1.matched(e.v)) out.push_back(e);
    }
    return out;
  }

  ValidationResult validate() const {
    ValidationResult r;
    for (const Edge& e : p1.edges()) {
      if (!m0.matched(e.u) || m0.matched(e.v)) {
        r.add("upper wing " + detail::edge_str(e) + " is not in A(M0) x unmatched B");
      }
    }
    for (const Edge& e : q1.edges()) {
      if (m0.matched(e.u) || !m0.matched(e.v)) {
        r.add("lower wing " + detail::edge_str(e) + " is not in unmatched A x B(M0)");
      }
    }
    return r;
  }
};

enum class WingSide { Upper, Lower };

/// One 3-augmenting path per edge of `second`.
///
/// Upper: `second` (P2) matches B(M_P) to unmatched A vertices; edge (a',b)
/// yields (upper wing at a, (a,b), (a',b)) where (a,b) is the m0 edge at b.
/// Lower: `second` (Q2) matches A(M_Q) to unmatched B vertices; edge (a,b')
/// yields ((a,b'), (a,b), lower wing at b).
/// The result is vertex-disjoint because p1/q1 and `second` are matchings.
inline AugPathSet three_aug_from_wings(const WingContext& ctx, const Matching& second,
                                       WingSide side) {
  AugPathSet out;
  for (const Edge& e : second.edges()) {
    if (side == WingSide::Upper) {
      if (!ctx.b_in_mp(e.v) || ctx.a_in_m0(e.u)) {
        throw ContractViolation("three_aug_from_wings: P2 edge " + detail::edge_str(e) +
                                " does not join unmatched A to B(M_P)");
      }
      const VertexId a = ctx.m0.partner(e.v);
      out.paths.push_back(AugPath::three(ctx.p1.edge_at(a), ctx.m0.edge_at(e.v), e));
    } else {
      if (!ctx.a_in_mq(e.u) || ctx.b_in_m0(e.v)) {
        throw ContractViolation("three_aug_from_wings: Q2 edge " + detail::edge_str(e) +
                                " does not join A(M_Q) to unmatched B");
      }
      const VertexId b = ctx.m0.partner(e.u);
      out.paths.push_back(AugPath::three(e, ctx.m0.edge_at(e.u), ctx.q1.edge_at(b)));
    }
  }
  return out;
}

/// 3-augmenting paths through M_P ∩ M_Q: both wings are already present.
inline AugPathSet both_wing_paths(const WingContext& ctx) {
  AugPathSet out;
  for (const Edge& e : ctx.m0.edges()) {
    if (ctx.p1.matched(e.u) && ctx.q1.matched(e.v)) {
      out.paths.push_back(AugPath::three(ctx.p1.edge_at(e.u), e, ctx.q1.edge_at(e.v)));
    }
  }
  return out;
}

/// One path per connector edge (a,b) of c, a in A(M_Q), b in B(M_P).
/// With e0 the m0 edge at b and e1 the m0 edge at a: e0 == e1 gives the
/// 3-path (upper wing, e0, lower wing), otherwise the 5-path
/// (upper wing of e0, e0, (a,b), e1, lower wing of e1).
///
/// Paths of different connectors overlap when one connector's e1 is
/// another's e0, so the output is a candidate list, not a disjoint set.
inline AugPathList paths_from_connector(const WingContext& ctx, const Matching& c) {
  AugPathList out;
  for (const Edge& e : c.edges()) {
    if (!ctx.a_in_mq(e.u) || !ctx.b_in_mp(e.v)) {
      throw ContractViolation("paths_from_connector: edge " + detail::edge_str(e) +
                              " is not in A(M_Q) x B(M_P)");
    }
    const VertexId a0 = ctx.m0.partner(e.v);
    const VertexId b1 = ctx.m0.partner(e.u);
    const Edge e0 = ctx.m0.edge_at(e.v);
    const Edge e1 = ctx.m0.edge_at(e.u);
    if (a0 == e.u) {
      out.push_back(AugPath::three(ctx.p1.edge_at(a0), e0, ctx.q1.edge_at(e.v)));
    } else {
      out.push_back(AugPath::five(ctx.p1.edge_at(a0), e0, e, e1, ctx.q1.edge_at(b1)));
    }
  }
  return out;
}

/// Sweeps the families in the given priority order and keeps every path
/// that shares no vertex with a path kept earlier.
inline AugPathSet select_disjoint(std::span<const AugPathList> families) {
  AugPathSet out;
  std::unordered_set<VertexId> used;
  for (const AugPathList& family : families) {
    for (const AugPath& p : family) {
      auto verts = p.vertices();
      bool clash = false;
      for (VertexId v : verts) {
        if (used.contains(v)) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      used.insert(verts.begin(), verts.end());
      out.paths.push_back(p);
    }
  }
  return out;
}

}  // namespace rosm
