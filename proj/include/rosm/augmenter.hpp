#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rosm/augmenting.hpp"
#include "rosm/greedy.hpp"
#include "rosm/matching.hpp"
#include "rosm/stream.hpp"

namespace rosm {

/// Which augmenting paths a streaming augmenter looks for.
enum class AugmenterKind {
  Three,      ///< 3-augmenting paths only (two phases per level)
  ThreeFive,  ///< 3- and 5-augmenting paths (three phases per level)
};

inline const char* to_string(AugmenterKind k) {
  return k == AugmenterKind::Three ? "three" : "three-five";
}

struct AugmenterParams {
  /// Fraction of the current level's suffix used by each phase.
  double tau = 0.05;
  /// Recurse when at least threshold * |M0| disjoint paths were found.
  double threshold = 0.05;
  /// Recursion levels allowed below the first.
  int max_depth = 16;
  /// Fraction of the stream given to the initial greedy matching.
  double prefix_frac = 0.1;
  std::string preset = "practical";

  static AugmenterParams practical() { return AugmenterParams{}; }

  /// Asymptotic constants for an n-vertex graph: tau = 1/(100 log^3 n),
  /// threshold and prefix 1/log n, depth 2 log^2 n.
  static AugmenterParams paper(std::size_t n) {
    const double l = log2_vertices(n);
    AugmenterParams p;
    p.tau = 1.0 / (100.0 * l * l * l);
    p.threshold = 1.0 / l;
    p.max_depth = static_cast<int>(std::ceil(2.0 * l * l));
    p.prefix_frac = 1.0 / l;
    p.preset = "paper";
    return p;
  }

  static int phases(AugmenterKind k) { return k == AugmenterKind::Three ? 2 : 3; }

  /// Smallest stream fraction any phase reads; used for memory budgets.
  double gamma_min() const { return std::min(tau, prefix_frac); }

  /// Throws std::invalid_argument unless every phase fits in a suffix.
  void validate(AugmenterKind k) const {
    if (!(tau > 0.0) || phases(k) * tau > 1.0) {
      throw std::invalid_argument("augmenter: tau must satisfy 0 < " +
                                  std::to_string(phases(k)) + "*tau <= 1");
    }
    if (!(threshold > 0.0) || threshold > 1.0) {
      throw std::invalid_argument("augmenter: threshold must be in (0,1]");
    }
    if (!(prefix_frac > 0.0) || prefix_frac > 1.0) {
      throw std::invalid_argument("augmenter: prefix fraction must be in (0,1]");
    }
    if (max_depth < 1) throw std::invalid_argument("augmenter: max depth must be >= 1");
  }

  /// Positions per phase for a suffix of `length` positions; at least one
  /// while the suffix is non-empty.
  std::size_t phase_length(std::size_t length) const {
    if (length == 0) return 0;
    return std::max<std::size_t>(1, floor_fraction(length, tau));
  }
};

/// What one level of the augmenter saw and did.
struct LevelRecord {
  std::vector<Edge> m0;
  std::size_t p1 = 0, p2 = 0, q1 = 0, q2 = 0, c = 0;
  std::size_t paths_found = 0;
  bool recursed = false;
};

/// Upper/lower wings of the first level, kept for analysis.
struct WingSnapshot {
  std::vector<Edge> p1, q1, mp, mq;
};

/// The candidate edge set T returned by an augmenter.
struct CandidateSet {
  /// T, deduplicated. Contains the input matching.
  std::vector<Edge> edges;
  /// Last level's labelled parts: M0, P1, P2, Q1, Q2, C, R1..R5.
  std::map<std::string, std::vector<Edge>> components;
  std::vector<LevelRecord> levels;
  WingSnapshot first_level;
  /// Matching the last level worked on (input matching after all applied paths).
  Matching final_matching;
  /// Stream positions the last level's collectors covered.
  Segment collect_segment;
  int recursion_depth = 0;
  bool depth_capped = false;
};

/// Single-pass augmenter driven one edge at a time.
///
/// The augmenter owns a suffix of stream positions. Each level splits its
/// suffix into phases of phase_length(L) positions:
///   1. greedy upper wings P1 (A(M0) x free B) and lower wings Q1
///      (free A x B(M0));
///   2. greedy P2 (free A x B(M_P)) and Q2 (A(M_Q) x free B);
///   3. (ThreeFive only) greedy connectors C (A(M_Q) x B(M_P)).
/// If enough disjoint augmenting paths exist the matching is augmented and
/// a new level starts on the rest of the suffix. Otherwise the rest is
/// scanned by the collectors R1..R4 (and R5 for ThreeFive).
///
/// Edges must be oriented (A-side, B-side). Positions not fed (filtered
/// out upstream) still count towards phase boundaries.
class StreamingAugmenter {
 public:
  StreamingAugmenter(AugmenterKind kind, Matching m0, Segment suffix, AugmenterParams params,
                     MemoryMeter& meter)
      : kind_(kind), params_(std::move(params)), meter_(&meter), hi_(suffix.hi) {
    params_.validate(kind_);
    start_level(std::move(m0), suffix.lo);
  }

  void feed(const Edge& e, std::size_t pos) {
    if (finished_) throw std::logic_error("augmenter: feed after finish");
    if (pos <= last_pos_ || pos > hi_ || pos < first_lo_) {
      throw SinglePassViolation("augmenter: position " + std::to_string(pos) +
                                " out of order or outside the suffix");
    }
    last_pos_ = pos;
    advance_to(pos);
    const VertexId a = e.u, b = e.v;
    const WingContext ctx{m0_, p1_, q1_};
    switch (phase_) {
      case Phase::Wings:
        if (ctx.a_in_m0(a) && !ctx.b_in_m0(b)) admit(p1_, e);
        if (!ctx.a_in_m0(a) && ctx.b_in_m0(b)) admit(q1_, e);
        break;
      case Phase::Seconds:
        if (!ctx.a_in_m0(a) && ctx.b_in_mp(b)) admit(p2_, e);
        if (ctx.a_in_mq(a) && !ctx.b_in_m0(b)) admit(q2_, e);
        break;
      case Phase::Connectors:
        if (ctx.a_in_mq(a) && ctx.b_in_mp(b)) admit(c_, e);
        break;
      case Phase::Collect: {
        bool kept = false;
        auto keep = [&](std::size_t i, bool cond) {
          if (!cond) return;
          r_[i].push_back(e);
          kept = true;
        };
        keep(0, !ctx.a_in_m0(a) && ctx.b_in_mp(b) && free_of(p2_, e));
        keep(1, ctx.a_in_mq(a) && !ctx.b_in_m0(b) && free_of(q2_, e));
        keep(2, ctx.a_in_m0(a) && !ctx.b_in_m0(b) && free_of(p1_, e));
        keep(3, !ctx.a_in_m0(a) && ctx.b_in_m0(b) && free_of(q1_, e));
        if (kind_ == AugmenterKind::ThreeFive) {
          keep(4, ctx.a_in_mq(a) && ctx.b_in_mp(b) && free_of(c_, e));
        }
        if (kept) meter_->store(1);
        break;
      }
    }
  }

  CandidateSet finish() {
    if (finished_) throw std::logic_error("augmenter: finish called twice");
    advance_to(hi_ + 1);
    finished_ = true;

    CandidateSet out;
    std::unordered_set<std::uint64_t> seen;
    auto put = [&](std::span<const Edge> es) {
      for (const Edge& e : es) {
        if (seen.insert(edge_key(e)).second) out.edges.push_back(e);
      }
    };
    put(earlier_t_);
    const auto m0_edges = m0_.edges();
    put(m0_edges);
    out.components["M0"] = m0_edges;
    const std::array<std::pair<const char*, const Matching*>, 5> parts{
        {{"P1", &p1_}, {"P2", &p2_}, {"Q1", &q1_}, {"Q2", &q2_}, {"C", &c_}}};
    for (auto [name, m] : parts) {
      auto es = m->edges();
      put(es);
      out.components[name] = std::move(es);
    }
    for (std::size_t i = 0; i < r_.size(); ++i) {
      put(r_[i]);
      out.components["R" + std::to_string(i + 1)] = r_[i];
    }
    levels_.push_back(current_record(0, false));
    out.levels = std::move(levels_);
    out.first_level = std::move(first_level_);
    out.final_matching = m0_;
    out.collect_segment = collect_segment_;
    out.recursion_depth = depth_;
    out.depth_capped = capped_;
    return out;
  }

  const Matching& current_matching() const { return m0_; }
  int depth() const { return depth_; }

 private:
  enum class Phase { Wings, Seconds, Connectors, Collect };

  static bool free_of(const Matching& m, const Edge& e) {
    return !m.matched(e.u) && !m.matched(e.v);
  }

  void admit(Matching& m, const Edge& e) {
    if (m.can_add(e)) {
      m.add(e);
      meter_->store(1);
    }
  }

  void start_level(Matching m0, std::size_t lo) {
    const std::size_t n = m0.num_vertices();
    m0_ = std::move(m0);
    p1_ = p2_ = q1_ = q2_ = c_ = Matching(n);
    for (auto& r : r_) r.clear();
    lo_ = lo;
    if (levels_.empty() && depth_ == 0) first_lo_ = lo;
    const std::size_t length = lo_ <= hi_ + 1 ? hi_ + 1 - lo_ : 0;
    len_ = params_.phase_length(length);
    phase_ = Phase::Wings;
  }

  /// Last position of the current phase (lo_-1 when the phase is empty).
  std::size_t phase_end() const {
    const std::size_t k = phase_ == Phase::Wings ? 1 : phase_ == Phase::Seconds ? 2 : 3;
    return std::min(hi_, lo_ + k * len_ - 1);
  }

  void advance_to(std::size_t pos) {
    while (phase_ != Phase::Collect && pos > phase_end()) end_phase();
  }

  void end_phase() {
    switch (phase_) {
      case Phase::Wings:
        if (depth_ == 0) {
          const WingContext ctx{m0_, p1_, q1_};
          first_level_ = WingSnapshot{p1_.edges(), q1_.edges(), ctx.mp_edges(), ctx.mq_edges()};
        }
        phase_ = Phase::Seconds;
        break;
      case Phase::Seconds:
        if (kind_ == AugmenterKind::ThreeFive) {
          phase_ = Phase::Connectors;
        } else {
          decide();
        }
        break;
      case Phase::Connectors:
        decide();
        break;
      case Phase::Collect:
        break;
    }
  }

  void decide() {
    const std::size_t boundary = phase_end();
    const WingContext ctx{m0_, p1_, q1_};
    AugPathSet chosen;
    if (kind_ == AugmenterKind::Three) {
      // Larger side wins; ties go to the upper (P) side.
      chosen = p2_.size() >= q2_.size() ? three_aug_from_wings(ctx, p2_, WingSide::Upper)
                                        : three_aug_from_wings(ctx, q2_, WingSide::Lower);
    } else {
      const std::array<AugPathList, 4> families{
          paths_from_connector(ctx, c_), both_wing_paths(ctx).paths,
          three_aug_from_wings(ctx, p2_, WingSide::Upper).paths,
          three_aug_from_wings(ctx, q2_, WingSide::Lower).paths};
      chosen = select_disjoint(families);
    }
    const double needed = params_.threshold * static_cast<double>(m0_.size());
    const bool enough = !chosen.empty() && static_cast<double>(chosen.size()) >= needed;
    if (enough && depth_ < params_.max_depth) {
      recurse(chosen, boundary);
      return;
    }
    if (enough) capped_ = true;
    phase_ = Phase::Collect;
    collect_segment_ = Segment{boundary + 1, hi_};
  }

  void recurse(const AugPathSet& paths, std::size_t boundary) {
    levels_.push_back(current_record(paths.size(), true));
    auto m0_edges = m0_.edges();
    earlier_t_.insert(earlier_t_.end(), m0_edges.begin(), m0_edges.end());
    meter_->release(static_cast<std::int64_t>(p1_.size() + p2_.size() + q1_.size() +
                                              q2_.size() + c_.size()));
    Matching next = apply_augmenting_paths(m0_, paths);
    meter_->store(static_cast<std::int64_t>(next.size()));
    ++depth_;
    start_level(std::move(next), boundary + 1);
  }

  LevelRecord current_record(std::size_t found, bool recursed) const {
    return LevelRecord{m0_.edges(), p1_.size(), p2_.size(), q1_.size(), q2_.size(),
                       c_.size(),   found,      recursed};
  }

  AugmenterKind kind_;
  AugmenterParams params_;
  MemoryMeter* meter_;
  std::size_t hi_;
  std::size_t first_lo_ = 1;
  std::size_t last_pos_ = 0;
  bool finished_ = false;

  // Current level.
  Matching m0_;
  Matching p1_, p2_, q1_, q2_, c_;
  std::array<std::vector<Edge>, 5> r_;
  std::size_t lo_ = 1;
  std::size_t len_ = 0;
  Phase phase_ = Phase::Wings;
  Segment collect_segment_{1, 0};

  std::vector<Edge> earlier_t_;
  std::vector<LevelRecord> levels_;
  WingSnapshot first_level_;
  int depth_ = 0;
  bool capped_ = false;
};

/// Runs an augmenter over `suffix` of the stream, feeding only the edges
/// that satisfy `pred`. Reads each position once.
template <class Pred>
CandidateSet run_augmenter(AugmenterKind kind, EdgeStream& stream, Segment suffix, Matching m0,
                           const AugmenterParams& params, MemoryMeter& meter, Pred&& pred) {
  StreamingAugmenter aug(kind, std::move(m0), suffix, params, meter);
  auto edges = stream.iterate(suffix);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (pred(edges[i])) aug.feed(edges[i], suffix.lo + i);
  }
  return aug.finish();
}

/// 3-augmenting-path augmenter over every edge of `suffix`.
inline CandidateSet barg(EdgeStream& stream, Segment suffix, Matching m0,
                         const AugmenterParams& params, MemoryMeter& meter) {
  return run_augmenter(AugmenterKind::Three, stream, suffix, std::move(m0), params, meter,
                       [](const Edge&) { return true; });
}

/// 3/5-augmenting-path augmenter over every edge of `suffix`.
inline CandidateSet farg(EdgeStream& stream, Segment suffix, Matching m0,
                         const AugmenterParams& params, MemoryMeter& meter) {
  return run_augmenter(AugmenterKind::ThreeFive, stream, suffix, std::move(m0), params, meter,
                       [](const Edge&) { return true; });
}

}  // namespace rosm
