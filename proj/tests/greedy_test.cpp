#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rosm/exact.hpp"
#include "rosm/generators.hpp"
#include "rosm/greedy.hpp"

using namespace rosm;

// Bipartite labels: a1=0, a2=1, b1=2, b2=3.

TEST(Greedy, ArrivalOrderDecides) {
  MemoryMeter meter;
  const std::vector<Edge> first{{0, 2}, {0, 3}, {1, 3}};
  EXPECT_EQ(greedy(4, first, meter), Matching::from_edges(4, {{0, 2}, {1, 3}}));
  const std::vector<Edge> second{{0, 3}, {1, 2}, {0, 2}};
  EXPECT_EQ(greedy(4, second, meter), Matching::from_edges(4, {{0, 3}, {1, 2}}));
  EXPECT_EQ(meter.stored_now(), 4u);
}

TEST(Greedy, PredicateRestrictsAdmission) {
  MemoryMeter meter;
  const std::vector<Edge> es{{0, 2}, {1, 3}};
  auto m = greedy(4, es, [](const Edge& e) { return e.u == 1; }, meter);
  EXPECT_EQ(m, Matching::from_edges(4, {{1, 3}}));
  EXPECT_EQ(meter.stored_now(), 1u);
}

TEST(Greedy, MaximalAndHalfApproximate) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testkit::random_general(12 + rng.below(8), 0.15, rng);
    const auto order = testkit::shuffled_edges(g, rng);
    auto pred = [](const Edge& e) { return (e.u + e.v) % 3 != 0; };
    MemoryMeter meter;
    const auto m = greedy(g.num_vertices(), order, pred, meter);
    EXPECT_TRUE(validate_matching(g, m).ok());
    std::vector<Edge> filtered;
    for (const Edge& e : order) {
      if (!pred(e)) continue;
      filtered.push_back(e);
      EXPECT_TRUE(m.matched(e.u) || m.matched(e.v)) << "edge left addable";
    }
    EXPECT_GE(2 * m.size(), max_matching_general(g.num_vertices(), filtered).size());
  }
}

TEST(GreedyMatcher, OfferReportsAdmission) {
  MemoryMeter meter;
  GreedyMatcher g(4, meter);
  EXPECT_TRUE(g.offer({0, 2}));
  EXPECT_FALSE(g.offer({0, 3}));
  EXPECT_EQ(g.matching().size(), 1u);
  EXPECT_EQ(meter.stored_peak(), 1u);
}

TEST(CollectResidual, Examples) {
  const auto m0 = Matching::from_edges(4, {{0, 2}});
  const std::vector<Edge> stream{{0, 3}, {1, 3}};
  MemoryMeter meter;
  EXPECT_EQ(collect_residual(stream, disjoint_from(m0), meter), (std::vector<Edge>{{1, 3}}));
  EXPECT_EQ(meter.stored_now(), 1u);
  EXPECT_TRUE(collect_residual(stream, [](const Edge&) { return false; }, meter).empty());
  EXPECT_EQ(count_uncovered(stream, m0), 1u);
}

TEST(CollectResidual, BoundAfterGreedyPrefix) {
  const std::size_t n = 128;
  const auto g = gen_planted_bipartite(n, 0.2, 4);
  const double gamma = 0.1;
  int within = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = shuffle(g, seed);
    MemoryMeter meter;
    const auto prefix = segment_of_fraction(s.size(), 0.0, gamma);
    const auto m0 = greedy(g.num_vertices(), s.iterate(prefix), meter);
    const auto rest = collect_residual(s.iterate(s.remaining()), disjoint_from(m0), meter);
    within += static_cast<double>(rest.size()) <= 30.0 * n * std::log2(n) / gamma;
  }
  EXPECT_GE(within, 19);
}

TEST(NonInterferingEdges, ResidualKeepsEnoughMatching) {
  // For any matching M with alpha = |M|/mu, edges avoiding V(M) still hold
  // a matching of size mu - 2|M|, and |M| + mu(R) >= mu - |M|.
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    const auto g = testkit::random_general(n, 0.1 + 0.5 * rng.unit(), rng);
    const auto m = testkit::random_matching(g, rng.unit(), rng);
    const std::size_t mu = max_matching_bruteforce(g.edges());
    std::vector<Edge> r;
    for (const Edge& e : g.edges()) {
      if (!m.matched(e.u) && !m.matched(e.v)) r.push_back(e);
    }
    const std::size_t mu_r = max_matching_bruteforce(r);
    EXPECT_GE(static_cast<long>(mu_r), static_cast<long>(mu) - 2 * static_cast<long>(m.size()));
    EXPECT_GE(m.size() + mu_r + m.size(), mu);
  }
}
