#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "degenum/exact_count.hpp"
#include "oracles.hpp"

using namespace degenum;

namespace {

std::vector<oracle::Pair> as_pairs(const ForbiddenGraph& x) { return {x.edges().begin(), x.edges().end()}; }

ForbiddenGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (coin(rng)) e.emplace_back(j, k);
  return ForbiddenGraph(n, e);
}

}  // namespace

TEST(ExactCount, SmallExamples) {
  EXPECT_EQ(exact_count(DegreeSequence({1, 1}), ForbiddenGraph(2)).value, 1);
  EXPECT_EQ(exact_count(DegreeSequence({1, 1}), ForbiddenGraph(2, {{0, 1}})).value, 0);
  EXPECT_EQ(exact_count(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4)).value, 3);
  EXPECT_EQ(exact_count(DegreeSequence({1, 1, 1, 1}), ForbiddenGraph(4)).value, 3);
}

TEST(ExactCount, CycleAvoidingOneEdgeMatchesEnumeration) {
  // Of the three 4-cycles on {1,2,3,4} only 1-3-2-4-1 avoids the pair 12.
  const DegreeSequence d({2, 2, 2, 2});
  const ForbiddenGraph x(4, {{0, 1}});
  EXPECT_EQ(oracle::brute_count({2, 2, 2, 2}, {{0, 1}}), 1);
  EXPECT_EQ(exact_count(d, x).value, 1);
}

TEST(ExactCount, ZeroWhenDegreeExceedsAllowedNeighbours) {
  EXPECT_EQ(exact_count(DegreeSequence({3, 1, 1, 1}), ForbiddenGraph(4, {{0, 1}})).value, 0);
}

TEST(ExactCount, AgreesWithBruteForceRandom) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 150; ++t) {
    const int n = 2 + t % 5;
    ForbiddenGraph g = random_graph(n, 0.5, rng);
    ForbiddenGraph x = random_graph(n, 0.3, rng);
    std::vector<int> deg(g.row_sums().begin(), g.row_sums().end());
    DegreeSequence d(deg);
    const auto expect = oracle::brute_count(deg, as_pairs(x));
    EXPECT_EQ(exact_count(d, x).value, expect);
    EXPECT_EQ(full_enumeration_count(d, x), expect);
  }
}

TEST(ExactCount, ComplementationIdentity) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + t % 6;
    ForbiddenGraph x = random_graph(n, 0.25, rng);
    std::bernoulli_distribution coin(0.5);
    std::vector<Edge> e;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (!x.has_edge(j, k) && coin(rng)) e.emplace_back(j, k);
    ForbiddenGraph g(n, e);
    DegreeSequence d(std::vector<int>(g.row_sums().begin(), g.row_sums().end()));
    auto dc = complement_degrees(d, x);
    ASSERT_TRUE(dc.has_value());
    EXPECT_EQ(exact_count(d, x).value, exact_count(*dc, x).value);
  }
}

TEST(ExactCount, PermutationInvarianceAndMonotone) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + t % 5;
    ForbiddenGraph g = random_graph(n, 0.5, rng);
    ForbiddenGraph x = random_graph(n, 0.2, rng);
    DegreeSequence d(std::vector<int>(g.row_sums().begin(), g.row_sums().end()));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const BigInt base = exact_count(d, x).value;
    EXPECT_EQ(exact_count(relabeled(d, perm), x.relabeled(perm)).value, base);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (!x.has_edge(j, k)) EXPECT_LE(exact_count(d, x.with_edge(j, k)).value, base);
  }
}

TEST(ExactCount, KnownRegularCounts) {
  // Labelled cubic graphs on 6 vertices: 70; on 8 vertices: 19355.
  EXPECT_EQ(exact_count(DegreeSequence::regular(6, 3), ForbiddenGraph(6)).value, 70);
  EXPECT_EQ(exact_count(DegreeSequence::regular(8, 3), ForbiddenGraph(8)).value, 19355);
  // Labelled 2-regular graphs on 5 vertices are the 12 Hamilton cycles.
  EXPECT_EQ(exact_count(DegreeSequence::regular(5, 2), ForbiddenGraph(5)).value, 12);
}

TEST(ExactCount, LimitExceeded) {
  EXPECT_THROW(exact_count(DegreeSequence::regular(14, 2), ForbiddenGraph(14)), LimitExceeded);
  EXPECT_THROW(exact_count(DegreeSequence::regular(12, 2), ForbiddenGraph(12, {{0, 1}})), LimitExceeded);
  ExactCountConfig cfg;
  cfg.max_n_forbidden = 12;
  EXPECT_NO_THROW(exact_count(DegreeSequence::regular(12, 2), ForbiddenGraph(12, {{0, 1}}), cfg));
}

TEST(ExactProbability, Examples) {
  const DegreeSequence d({2, 2, 2, 2});
  EXPECT_EQ(exact_probability(d, ForbiddenGraph(4), Event::miss()), 1);
  EXPECT_EQ(exact_probability(d, ForbiddenGraph(4), Event::hit()), 1);
  const ForbiddenGraph x(4, {{0, 1}});
  // Two of the three 4-cycles use the pair 12.
  EXPECT_EQ(oracle::brute_count_containing({2, 2, 2, 2}, {{0, 1}}), 2);
  EXPECT_EQ(exact_probability(d, x, Event::hit()), Rational(2, 3));
  EXPECT_EQ(exact_probability(d, x, Event::miss()), Rational(1, 3));
  // Induced on {1,2}: graphs whose restriction to {1,2} is exactly the edge 12.
  const auto induced = exact_probability(d, x, Event::induced(2));
  EXPECT_EQ(induced, Rational(oracle::brute_count_containing({2, 2, 2, 2}, {{0, 1}}), 3));
}

TEST(ExactProbability, InducedAgreesWithEnumeration) {
  // Induced triangle on the first three vertices, and the induced path 1-2, 2-3 (13 absent).
  const std::vector<int> deg{3, 3, 2, 2, 2, 2};
  const DegreeSequence d(deg);
  const std::int64_t total = oracle::brute_count(deg, {});
  std::int64_t tri = 0;
  std::int64_t path = 0;
  oracle::for_each_graph(6, [&](std::uint64_t mask, const std::vector<oracle::Pair>& pairs, const std::vector<int>& g) {
    if (g != deg) return;
    auto has = [&](int j, int k) {
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (((mask >> e) & 1U) && pairs[e] == oracle::Pair{j, k}) return true;
      return false;
    };
    if (has(0, 1) && has(0, 2) && has(1, 2)) ++tri;
    if (has(0, 1) && has(1, 2) && !has(0, 2)) ++path;
  });
  EXPECT_EQ(exact_probability(d, ForbiddenGraph(6, {{0, 1}, {0, 2}, {1, 2}}), Event::induced(3)), Rational(tri, total));
  EXPECT_EQ(exact_probability(d, ForbiddenGraph(6, {{0, 1}, {1, 2}}), Event::induced(3)), Rational(path, total));
}

TEST(ExactProbability, Errors) {
  // (3,3,1,1) is not graphical, so G(d) = 0.
  EXPECT_THROW(exact_probability(DegreeSequence({3, 3, 1, 1}), ForbiddenGraph(4), Event::miss()), UndefinedProbability);
  EXPECT_THROW(exact_probability(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4, {{2, 3}}), Event::induced(2)),
               InvalidInput);
}

TEST(OverlapDistribution, Examples) {
  auto empty = exact_overlap_distribution(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4));
  ASSERT_EQ(empty.size(), 1U);
  EXPECT_EQ(empty[0], 1);

  auto one = exact_overlap_distribution(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4, {{0, 1}}));
  ASSERT_EQ(one.size(), 2U);
  EXPECT_EQ(one[0], Rational(1, 3));
  EXPECT_EQ(one[1], Rational(2, 3));

  auto pm = exact_overlap_distribution(DegreeSequence({1, 1, 1, 1}), ForbiddenGraph(4, {{0, 1}, {2, 3}}));
  ASSERT_EQ(pm.size(), 3U);
  EXPECT_EQ(pm[0], Rational(2, 3));
  EXPECT_EQ(pm[1], 0);
  EXPECT_EQ(pm[2], Rational(1, 3));
}

TEST(OverlapDistribution, MatchesEnumerationAndSumsToOne) {
  const std::vector<int> deg{3, 2, 2, 2, 2, 1};
  const ForbiddenGraph y(6, {{0, 1}, {1, 2}, {3, 4}, {0, 5}});
  const auto dist = exact_overlap_distribution(DegreeSequence(deg), y);
  const std::int64_t total = oracle::brute_count(deg, {});
  Rational sum = 0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    EXPECT_EQ(dist[k], Rational(oracle::brute_overlap(deg, as_pairs(y), static_cast<int>(k)), total)) << "k=" << k;
    sum += dist[k];
  }
  EXPECT_EQ(sum, 1);
}
