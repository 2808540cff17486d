#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rosm/matching.hpp"
#include "rosm/stream.hpp"

namespace rosm {

/// First-come greedy matching fed one edge at a time. Admitted edges are
/// charged to the meter.
class GreedyMatcher {
 public:
  GreedyMatcher(std::size_t n, MemoryMeter& meter) : matching_(n), meter_(&meter) {}

  /// Admits e if both endpoints are free; returns whether it was admitted.
  bool offer(const Edge& e) {
    if (!matching_.can_add(e)) return false;
    matching_.add(e);
    meter_->store(1);
    return true;
  }

  const Matching& matching() const { return matching_; }
  Matching take() && { return std::move(matching_); }

 private:
  Matching matching_;
  MemoryMeter* meter_;
};

/// Maximal matching over the pred-satisfying edges of `edges`, admitting
/// in arrival order.
template <class Pred>
Matching greedy(std::size_t n, std::span<const Edge> edges, Pred&& pred, MemoryMeter& meter) {
  GreedyMatcher g(n, meter);
  for (const Edge& e : edges) {
    if (pred(e)) g.offer(e);
  }
  return std::move(g).take();
}

inline Matching greedy(std::size_t n, std::span<const Edge> edges, MemoryMeter& meter) {
  return greedy(n, edges, [](const Edge&) { return true; }, meter);
}

/// Stores every pred-satisfying edge, in arrival order, charging one unit
/// per edge. No cap: a budget overrun shows up on the meter only.
template <class Pred>
std::vector<Edge> collect_residual(std::span<const Edge> edges, Pred&& pred, MemoryMeter& meter) {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (pred(e)) {
      out.push_back(e);
      meter.store(1);
    }
  }
  return out;
}

/// Predicate: e shares no vertex with m.
inline auto disjoint_from(const Matching& m) {
  return [&m](const Edge& e) { return !m.matched(e.u) && !m.matched(e.v); };
}

/// Number of edges of `edges` with neither endpoint covered by m.
inline std::size_t count_uncovered(std::span<const Edge> edges, const Matching& m) {
  std::size_t c = 0;
  for (const Edge& e : edges) c += (!m.matched(e.u) && !m.matched(e.v));
  return c;
}

}  // namespace rosm
