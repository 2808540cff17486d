#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "rosm/augmenter.hpp"
#include "rosm/exact.hpp"
#include "rosm/greedy.hpp"
#include "rosm/matching.hpp"
#include "rosm/stream.hpp"

namespace rosm {

struct RunArtifacts {
  std::size_t m0_size = 0;
  std::size_t t_size = 0;
  std::size_t r_size = 0;
  std::size_t m1_size = 0;
  std::size_t final_size = 0;
  std::size_t peak_edges = 0;
  int recursion_depth = 0;
  bool depth_capped = false;
  bool budget_exceeded = false;

  std::vector<std::string> flags() const {
    std::vector<std::string> out;
    if (depth_capped) out.emplace_back("depth_capped");
    if (budget_exceeded) out.emplace_back("budget_exceeded");
    return out;
  }
};

struct PipelineResult {
  Matching matching;
  Matching m0;
  RunArtifacts artifacts;
  /// Augmenter output; empty for greedy.
  CandidateSet candidates;
  /// Edges stored because they avoided V(M0).
  std::vector<Edge> residual;
};

/// Edge budget 30 n log2(n)^2 / gamma_min for an n-vertex graph.
inline std::size_t default_budget(std::size_t n, const AugmenterParams& params) {
  const double l = log2_vertices(n);
  return static_cast<std::size_t>(
      std::ceil(30.0 * static_cast<double>(n) * l * l / params.gamma_min()));
}

namespace detail {
inline std::vector<Edge> union_dedup(std::initializer_list<std::span<const Edge>> parts) {
  std::vector<Edge> out;
  std::unordered_set<std::uint64_t> seen;
  for (auto part : parts) {
    for (const Edge& e : part) {
      if (seen.insert(edge_key(e)).second) out.push_back(e);
    }
  }
  return out;
}
}  // namespace detail

/// Bipartite pipeline fed one edge at a time over a window of positions.
///
/// The first floor(L * prefix_frac) positions of the window build a greedy
/// matching M0. Later edges with both endpoints free are kept in R; the
/// others go to the augmenter (3-path kind: exactly one endpoint in V(M0);
/// 3/5-path kind: at least one, so connector edges reach it). The result is
/// a maximum matching of M0 + T + R.
class StreamingBm {
 public:
  StreamingBm(Bipartition bip, Segment window, AugmenterKind kind, AugmenterParams params,
              MemoryMeter& meter)
      : bip_(std::move(bip)),
        window_(window),
        kind_(kind),
        params_(std::move(params)),
        meter_(&meter),
        greedy_(bip_.size(), meter) {
    params_.validate(kind_);
    prefix_ = Segment{window_.lo, window_.lo + floor_fraction(window_.length(), params_.prefix_frac) - 1};
  }

  void feed(const Edge& e, std::size_t pos) {
    if (pos > prefix_.hi) {
      start_augmenter();
      const bool u_in = m0_.matched(e.u), v_in = m0_.matched(e.v);
      if (!u_in && !v_in) {
        residual_.push_back(e);
        meter_->store(1);
      } else if (u_in != v_in || kind_ == AugmenterKind::ThreeFive) {
        aug_->feed(e, pos);
      }
      return;
    }
    greedy_.offer(e);
  }

  PipelineResult finish() {
    start_augmenter();
    PipelineResult out;
    out.candidates = aug_->finish();
    out.m0 = m0_;
    out.residual = std::move(residual_);
    const auto m0_edges = m0_.edges();
    const auto pool = detail::union_dedup({m0_edges, out.candidates.edges, out.residual});
    out.matching = max_matching_bipartite(pool, bip_);

    auto& a = out.artifacts;
    a.m0_size = m0_.size();
    a.t_size = out.candidates.edges.size();
    a.r_size = out.residual.size();
    a.final_size = out.matching.size();
    a.peak_edges = meter_->stored_peak();
    a.recursion_depth = out.candidates.recursion_depth;
    a.depth_capped = out.candidates.depth_capped;
    a.budget_exceeded = meter_->budget_exceeded();
    return out;
  }

  /// Greedy matching so far (final once the prefix has been passed).
  const Matching& m0() const { return aug_ ? m0_ : greedy_.matching(); }

 private:
  void start_augmenter() {
    if (aug_) return;
    m0_ = greedy_.matching();
    aug_.emplace(kind_, m0_, Segment{prefix_.hi + 1, window_.hi}, params_, *meter_);
  }

  Bipartition bip_;
  Segment window_;
  Segment prefix_;
  AugmenterKind kind_;
  AugmenterParams params_;
  MemoryMeter* meter_;
  GreedyMatcher greedy_;
  Matching m0_;
  std::optional<StreamingAugmenter> aug_;
  std::vector<Edge> residual_;
};

/// Bipartite pipeline over the whole stream in one pass.
/// Throws GraphError if the stream carries no bipartition.
inline PipelineResult bm(EdgeStream& stream, AugmenterKind kind, const AugmenterParams& params,
                         MemoryMeter& meter) {
  if (!stream.is_bipartite()) throw GraphError("bm: stream is not bipartite");
  const Segment all{1, stream.size()};
  StreamingBm run(*stream.bipartition(), all, kind, params, meter);
  auto edges = stream.iterate(all);
  for (std::size_t i = 0; i < edges.size(); ++i) run.feed(edges[i], i + 1);
  return run.finish();
}

/// Relabelling of a general graph into (V(M0), rest). View ids
/// 0..|V(M0)|-1 are the matched vertices in increasing order, the rest
/// follow in increasing order.
class BipartiteView {
 public:
  explicit BipartiteView(const Matching& m0) : to_view_(m0.num_vertices()) {
    const std::size_t n = m0.num_vertices();
    to_orig_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
      if (m0.matched(v)) to_orig_.push_back(v);
    }
    const std::size_t n_a = to_orig_.size();
    for (VertexId v = 0; v < n; ++v) {
      if (!m0.matched(v)) to_orig_.push_back(v);
    }
    for (VertexId i = 0; i < n; ++i) to_view_[to_orig_[i]] = i;
    bip_ = Bipartition::split(n, n_a);
  }

  const Bipartition& bipartition() const { return bip_; }
  std::size_t side_a_size() const { return bip_.count_a(); }

  VertexId to_view(VertexId v) const { return to_view_[v]; }
  VertexId to_original(VertexId v) const { return to_orig_[v]; }

  /// Edge in view ids, oriented (side A, side B).
  Edge to_view(const Edge& e) const { return bip_.orient({to_view_[e.u], to_view_[e.v]}); }
  Edge to_original(const Edge& e) const { return {to_orig_[e.u], to_orig_[e.v]}; }

 private:
  std::vector<VertexId> to_view_;
  std::vector<VertexId> to_orig_;
  Bipartition bip_;
};

struct GmResult {
  PipelineResult pipeline;
  /// Inner bipartite matching M1 in original ids.
  Matching m1;
  /// Inner run in view ids.
  PipelineResult inner;
};

/// General-graph pipeline in one pass. Greedy M0 over the prefix; edges
/// with exactly one endpoint in V(M0) form a bipartite sub-stream handled
/// by the bipartite pipeline over the remaining positions; edges avoiding
/// V(M0) are stored. Returns a maximum matching of M0 + R + M1.
inline GmResult gm(EdgeStream& stream, AugmenterKind kind, const AugmenterParams& params,
                   MemoryMeter& meter) {
  params.validate(kind);
  const std::size_t n = stream.num_vertices();
  const std::size_t m = stream.size();
  const Segment prefix{1, floor_fraction(m, params.prefix_frac)};
  Matching m0 = greedy(n, stream.iterate(prefix), meter);

  const BipartiteView view(m0);
  const Segment rest{prefix.hi + 1, m};
  StreamingBm inner(view.bipartition(), rest, kind, params, meter);
  std::vector<Edge> residual;
  auto edges = stream.iterate(rest);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const bool u_in = m0.matched(e.u), v_in = m0.matched(e.v);
    if (!u_in && !v_in) {
      residual.push_back(e);
      meter.store(1);
    } else if (u_in != v_in) {
      inner.feed(view.to_view(e), rest.lo + i);
    }
  }

  GmResult out;
  out.inner = inner.finish();
  out.m1 = Matching(n);
  for (const Edge& e : out.inner.matching.edges()) out.m1.add(view.to_original(e));

  const auto m0_edges = m0.edges();
  const auto m1_edges = out.m1.edges();
  const auto pool = detail::union_dedup({m0_edges, residual, m1_edges});
  auto& p = out.pipeline;
  p.matching = max_matching_general(n, pool);
  p.m0 = std::move(m0);
  p.residual = std::move(residual);

  auto& a = p.artifacts;
  a.m0_size = p.m0.size();
  a.t_size = out.inner.candidates.edges.size();
  a.r_size = p.residual.size();
  a.m1_size = out.m1.size();
  a.final_size = p.matching.size();
  a.peak_edges = meter.stored_peak();
  a.recursion_depth = out.inner.artifacts.recursion_depth;
  a.depth_capped = out.inner.artifacts.depth_capped;
  a.budget_exceeded = meter.budget_exceeded();
  return out;
}

/// Plain greedy over the whole stream.
inline PipelineResult greedy_pipeline(EdgeStream& stream, MemoryMeter& meter) {
  PipelineResult out;
  out.matching = greedy(stream.num_vertices(), stream.iterate(stream.remaining()), meter);
  out.m0 = out.matching;
  auto& a = out.artifacts;
  a.m0_size = a.final_size = out.matching.size();
  a.peak_edges = meter.stored_peak();
  a.budget_exceeded = meter.budget_exceeded();
  return out;
}

}  // namespace rosm
