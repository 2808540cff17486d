#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosm/graph.hpp"

namespace rosm {

/// Seedable generator used for every random choice in the library.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded integers use rejection sampling and reals use the top
/// 53 bits, so results do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). Precondition: bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform real in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// 1-based inclusive range of stream positions; empty when lo == hi + 1.
struct Segment {
  std::size_t lo = 1;
  std::size_t hi = 0;

  std::size_t length() const { return hi + 1 - lo; }
  bool empty() const { return hi + 1 == lo; }
  bool contains(std::size_t pos) const { return pos >= lo && pos <= hi; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// floor(m * frac), robust to the representation error of decimal
/// fractions such as 0.29.
inline std::size_t floor_fraction(std::size_t m, double frac) {
  return static_cast<std::size_t>(
      std::floor(static_cast<long double>(m) * static_cast<long double>(frac) + 1e-9L));
}

/// Positions (floor(m*start)+1 .. floor(m*end)] of a length-m stream.
inline Segment segment_of_fraction(std::size_t m, double start_frac, double end_frac) {
  if (!(start_frac >= 0.0) || !(end_frac <= 1.0) || start_frac > end_frac) {
    throw std::invalid_argument("segment_of_fraction: need 0 <= start <= end <= 1, got " +
                                std::to_string(start_frac) + ", " + std::to_string(end_frac));
  }
  return Segment{floor_fraction(m, start_frac) + 1, floor_fraction(m, end_frac)};
}

/// The `count` positions of `parent` starting `offset` positions in,
/// clamped to parent.hi. May be empty.
inline Segment sub_segment(const Segment& parent, std::size_t offset, std::size_t count) {
  const std::size_t lo = std::min(parent.lo + offset, parent.hi + 1);
  if (lo > parent.hi || count == 0) return Segment{lo, lo - 1};
  return Segment{lo, std::min(parent.hi, lo + count - 1)};
}

/// Thrown when a consumer asks for a stream position it already passed.
class SinglePassViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A fixed edge order that can be read once, front to back.
///
/// Every position handed out is recorded; positions_read() and
/// max_reads_per_position() expose the audit.
class EdgeStream {
 public:
  EdgeStream(std::vector<Edge> order, std::size_t n,
             std::optional<Bipartition> bip = std::nullopt)
      : order_(std::move(order)), n_(n), bip_(std::move(bip)), reads_(order_.size(), 0) {}

  std::size_t size() const { return order_.size(); }
  std::size_t num_vertices() const { return n_; }
  const std::optional<Bipartition>& bipartition() const { return bip_; }
  bool is_bipartite() const { return bip_.has_value(); }

  /// Next unread position (1-based); size()+1 once exhausted.
  std::size_t cursor() const { return cursor_; }
  Segment remaining() const { return Segment{cursor_, order_.size()}; }

  /// Hands out positions seg.lo..seg.hi and advances the cursor past them.
  /// Empty segments are always accepted and read nothing.
  std::span<const Edge> iterate(const Segment& seg) {
    if (seg.empty()) return {};
    if (seg.hi > order_.size() || seg.lo == 0 || seg.lo > seg.hi + 1) {
      throw std::out_of_range("stream: segment [" + std::to_string(seg.lo) + "," +
                              std::to_string(seg.hi) + "] outside [1," +
                              std::to_string(order_.size()) + "]");
    }
    if (seg.lo < cursor_) {
      throw SinglePassViolation("stream: segment starting at " + std::to_string(seg.lo) +
                                " rewinds past cursor " + std::to_string(cursor_));
    }
    for (std::size_t p = seg.lo; p <= seg.hi; ++p) {
      if (reads_[p - 1] < 255) ++reads_[p - 1];
    }
    cursor_ = seg.hi + 1;
    return std::span<const Edge>(order_).subspan(seg.lo - 1, seg.length());
  }

  std::size_t positions_read() const {
    std::size_t c = 0;
    for (auto r : reads_) c += (r > 0);
    return c;
  }
  unsigned max_reads_per_position() const {
    unsigned best = 0;
    for (auto r : reads_) best = std::max<unsigned>(best, r);
    return best;
  }
  /// True iff every position has been read exactly once.
  bool read_exactly_once() const {
    for (auto r : reads_) {
      if (r != 1) return false;
    }
    return true;
  }

  /// Whole permutation, for inspection outside of a run.
  const std::vector<Edge>& order() const { return order_; }

 private:
  std::vector<Edge> order_;
  std::size_t n_ = 0;
  std::optional<Bipartition> bip_;
  std::size_t cursor_ = 1;
  std::vector<std::uint8_t> reads_;
};

/// Uniformly random order of g's edges (Fisher-Yates driven by Rng).
/// Throws std::invalid_argument for an edgeless graph.
inline EdgeStream shuffle(const Graph& g, std::uint64_t seed) {
  if (g.num_edges() == 0) throw std::invalid_argument("shuffle: graph has no edges");
  std::vector<Edge> order(g.edges().begin(), g.edges().end());
  Rng rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(order[i], order[j]);
  }
  return EdgeStream(std::move(order), g.num_vertices(), g.bipartition());
}

/// Counts edges retained by a run. The budget is advisory: exceeding it
/// latches a flag but never truncates storage.
class MemoryMeter {
 public:
  MemoryMeter() = default;
  explicit MemoryMeter(std::optional<std::size_t> budget) : budget_(budget) {}

  void store(std::int64_t k = 1) {
    if (k < 0) throw std::invalid_argument("meter: negative store count");
    now_ += static_cast<std::size_t>(k);
    peak_ = std::max(peak_, now_);
    if (budget_ && now_ > *budget_) exceeded_ = true;
  }

  void release(std::int64_t k = 1) {
    if (k < 0) throw std::invalid_argument("meter: negative release count");
    if (static_cast<std::size_t>(k) > now_) {
      throw std::logic_error("meter: releasing more edges than are stored");
    }
    now_ -= static_cast<std::size_t>(k);
  }

  std::size_t stored_now() const { return now_; }
  std::size_t stored_peak() const { return peak_; }
  std::optional<std::size_t> budget() const { return budget_; }
  bool budget_exceeded() const { return exceeded_; }

 private:
  std::size_t now_ = 0;
  std::size_t peak_ = 0;
  std::optional<std::size_t> budget_;
  bool exceeded_ = false;
};

}  // namespace rosm
