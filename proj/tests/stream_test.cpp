#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "rosm/stream.hpp"

using namespace rosm;

namespace {
EdgeStream three_edge_stream() {
  return EdgeStream({{0, 3}, {1, 4}, {2, 5}}, 6, Bipartition::split(6, 3));
}
}  // namespace

TEST(Rng, DeterministicPerSeed) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(Rng(1).next(), Rng(2).next());
}

TEST(Rng, BelowStaysInRange) {
  Rng r(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, MatchesStandardEngine) {
  // The raw sequence is fixed by the standard for mt19937_64.
  Rng r(5489);
  for (int i = 1; i < 10000; ++i) r.next();
  EXPECT_EQ(r.next(), 9981545732273789042ULL);
}

TEST(Shuffle, SingleEdge) {
  const auto g = Graph::build(2, {{0, 1}});
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    auto s = shuffle(g, seed);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.order()[0], (Edge{0, 1}));
  }
}

TEST(Shuffle, SameSeedSameOrderAndIsPermutation) {
  std::vector<Edge> es;
  for (VertexId i = 0; i < 30; ++i) es.push_back({i, static_cast<VertexId>(i + 30)});
  const auto g = Graph::build(60, es, Bipartition::split(60, 30));
  EXPECT_EQ(shuffle(g, 9).order(), shuffle(g, 9).order());
  EXPECT_NE(shuffle(g, 9).order(), shuffle(g, 10).order());
  auto sorted = shuffle(g, 9).order();
  std::sort(sorted.begin(), sorted.end());
  auto orig = std::vector<Edge>(g.edges().begin(), g.edges().end());
  std::sort(orig.begin(), orig.end());
  EXPECT_EQ(sorted, orig);
  EXPECT_TRUE(shuffle(g, 9).is_bipartite());
}

TEST(Shuffle, ThreeEdgePermutationsUniform) {
  const auto g = Graph::build(6, {{0, 1}, {2, 3}, {4, 5}});
  std::map<std::vector<Edge>, int> counts;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) ++counts[shuffle(g, seed).order()];
  ASSERT_EQ(counts.size(), 6u);
  const double sigma = std::sqrt(6000.0 * (1.0 / 6.0) * (5.0 / 6.0));
  for (const auto& [order, c] : counts) EXPECT_LE(std::abs(c - 1000), 3.0 * sigma);
}

TEST(Shuffle, EdgelessGraphRejected) {
  EXPECT_THROW(shuffle(Graph::build(3, std::span<const Edge>{}), 0), std::invalid_argument);
}

TEST(SegmentOfFraction, FloorRule) {
  EXPECT_EQ(segment_of_fraction(100, 0.0, 0.1), (Segment{1, 10}));
  EXPECT_EQ(segment_of_fraction(100, 0.1, 0.2), (Segment{11, 20}));
  EXPECT_EQ(segment_of_fraction(7, 0.0, 1.0 / 3.0), (Segment{1, 2}));
  EXPECT_EQ(segment_of_fraction(100, 0.0, 0.29), (Segment{1, 29}));
  EXPECT_TRUE(segment_of_fraction(5, 0.5, 0.5).empty());
}

TEST(SegmentOfFraction, RejectsBadFractions) {
  EXPECT_THROW(segment_of_fraction(10, -0.1, 0.5), std::invalid_argument);
  EXPECT_THROW(segment_of_fraction(10, 0.0, 1.5), std::invalid_argument);
  EXPECT_THROW(segment_of_fraction(10, 0.6, 0.5), std::invalid_argument);
}

TEST(Segment, LengthAndSubSegment) {
  const Segment s{5, 14};
  EXPECT_EQ(s.length(), 10u);
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(15));
  EXPECT_EQ(sub_segment(s, 0, 3), (Segment{5, 7}));
  EXPECT_EQ(sub_segment(s, 8, 5), (Segment{13, 14}));
  EXPECT_TRUE(sub_segment(s, 10, 5).empty());
  EXPECT_TRUE(sub_segment(s, 2, 0).empty());
  EXPECT_TRUE(sub_segment(s, 50, 1).empty());
}

TEST(Iterate, ForwardThenRewindFails) {
  auto s = three_edge_stream();
  auto first = s.iterate({1, 2});
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(first[0], (Edge{0, 3}));
  EXPECT_EQ(first[1], (Edge{1, 4}));
  auto second = s.iterate({3, 3});
  ASSERT_EQ(second.size(), 1u);
  EXPECT_EQ(second[0], (Edge{2, 5}));
  EXPECT_THROW(s.iterate({2, 3}), SinglePassViolation);
  EXPECT_TRUE(s.read_exactly_once());
  EXPECT_EQ(s.max_reads_per_position(), 1u);
}

TEST(Iterate, EmptySegmentsAndBounds) {
  auto s = three_edge_stream();
  EXPECT_TRUE(s.iterate({1, 0}).empty());
  EXPECT_THROW(s.iterate({2, 4}), std::out_of_range);
  s.iterate({2, 3});
  EXPECT_TRUE(s.iterate({4, 3}).empty());
  EXPECT_EQ(s.positions_read(), 2u);
  EXPECT_FALSE(s.read_exactly_once());
  EXPECT_EQ(s.cursor(), 4u);
  EXPECT_TRUE(s.remaining().empty());
}

TEST(Iterate, SkippingAheadIsAllowed) {
  auto s = three_edge_stream();
  s.iterate({3, 3});
  EXPECT_EQ(s.positions_read(), 1u);
  EXPECT_THROW(s.iterate({1, 1}), SinglePassViolation);
}

TEST(MemoryMeter, StoreReleasePeak) {
  MemoryMeter m;
  m.store(5);
  m.store(3);
  EXPECT_EQ(m.stored_now(), 8u);
  EXPECT_EQ(m.stored_peak(), 8u);
  m.release(4);
  EXPECT_EQ(m.stored_now(), 4u);
  EXPECT_EQ(m.stored_peak(), 8u);
  EXPECT_FALSE(m.budget_exceeded());
}

TEST(MemoryMeter, BudgetFlagLatches) {
  MemoryMeter m(6);
  m.store(7);
  EXPECT_TRUE(m.budget_exceeded());
  m.release(7);
  EXPECT_TRUE(m.budget_exceeded());
  EXPECT_EQ(m.budget(), 6u);
}

TEST(MemoryMeter, RejectsNegativeAndOverRelease) {
  MemoryMeter m;
  EXPECT_THROW(m.store(-1), std::invalid_argument);
  EXPECT_THROW(m.release(-1), std::invalid_argument);
  m.store(2);
  EXPECT_THROW(m.release(3), std::logic_error);
}
