#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "degenum/graph_types.hpp"
#include "degenum/parameters.hpp"
#include "oracles.hpp"

using namespace degenum;

namespace {

ForbiddenGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (coin(rng)) e.emplace_back(j, k);
  return ForbiddenGraph(n, e);
}

}  // namespace

TEST(DegreeSequence, RejectsOddSumAndRange) {
  EXPECT_THROW(DegreeSequence({1, 1, 1}), InvalidInput);
  EXPECT_THROW(DegreeSequence({3, 1}), InvalidInput);
  EXPECT_THROW(DegreeSequence({-1, 1}), InvalidInput);
  EXPECT_FALSE(DegreeSequence::try_make({1, 1, 1}).has_value());
  DegreeSequence d({2, 2, 2, 2});
  EXPECT_EQ(d.edge_count(), 4);
  EXPECT_TRUE(d.is_regular());
  EXPECT_EQ(d.max_degree(), 2);
}

TEST(ForbiddenGraph, RejectsLoopsDuplicatesRange) {
  EXPECT_THROW(ForbiddenGraph(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(ForbiddenGraph(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(ForbiddenGraph(3, {{0, 3}}), InvalidInput);
}

TEST(ForbiddenGraph, RowSumsSumToTwiceEdges) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 9;
    ForbiddenGraph x = random_graph(n, 0.4, rng);
    const auto rs = x.row_sums();
    EXPECT_EQ(std::accumulate(rs.begin(), rs.end(), std::int64_t{0}), 2 * x.edge_count());
    for (int j = 0; j < n; ++j) {
      EXPECT_EQ(static_cast<int>(x.neighbors(j).size()), x.row_sum(j));
      for (int k = 0; k < n; ++k) EXPECT_EQ(x.has_edge(j, k), x.has_edge(k, j));
    }
  }
}

TEST(ForbiddenGraph, CompleteAndRelabel) {
  auto k3 = ForbiddenGraph::complete(5, 3);
  EXPECT_EQ(k3.edge_count(), 3);
  EXPECT_EQ(k3.row_sum(3), 0);
  const std::vector<int> perm{4, 3, 2, 1, 0};
  auto r = k3.relabeled(perm);
  EXPECT_TRUE(r.has_edge(4, 3));
  EXPECT_TRUE(r.has_edge(2, 4));
  EXPECT_FALSE(r.has_edge(0, 1));
}

TEST(Graphical, ErdosGallaiMatchesExhaustiveSearch) {
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    for (;;) {
      EXPECT_EQ(is_graphical(d), oracle::brute_graphical(d)) << "n=" << n;
      int j = 0;
      while (j < n && ++d[static_cast<std::size_t>(j)] == n) d[static_cast<std::size_t>(j++)] = 0;
      if (j == n) break;
    }
  }
}

TEST(Graphical, ComplementDegrees) {
  DegreeSequence d({2, 2, 2, 2});
  ForbiddenGraph x(4, {{0, 1}});
  auto c = complement_degrees(d, x);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(std::vector<int>(c->degrees().begin(), c->degrees().end()), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_FALSE(complement_degrees(DegreeSequence({3, 3, 3, 3}), x).has_value());
  auto s = subtract_row_sums(d, x);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(std::vector<int>(s->degrees().begin(), s->degrees().end()), (std::vector<int>{1, 1, 2, 2}));
}

TEST(Parameters, RegularEmpty) {
  auto p = compute_parameters(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4));
  EXPECT_EQ(p.lambda_exact, (Fraction{2, 3}));
  EXPECT_DOUBLE_EQ(p.lambda, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.A, 1.0 / 9.0);
  for (double v : p.delta) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(p.R, 0.0);
  EXPECT_EQ(p.D, 0.0);
  EXPECT_EQ(p.K, 0.0);
}

TEST(Parameters, RegularOneEdge) {
  // Hand arithmetic: lambda = 2/3, delta_j = lambda x_j.
  auto p = compute_parameters(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4, {{0, 1}}));
  EXPECT_EQ(p.X, 1);
  EXPECT_EQ(p.x, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_NEAR(p.delta[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.delta[1], 2.0 / 3.0, 1e-15);
  EXPECT_EQ(p.delta[2], 0.0);
  EXPECT_EQ(p.delta[3], 0.0);
  EXPECT_NEAR(p.D, 4.0 / 9.0, 1e-15);
  EXPECT_NEAR(p.H, 1.0, 1e-15);
  EXPECT_EQ(p.K, 0.0);
}

TEST(Parameters, IrregularExample) {
  auto p = compute_parameters(DegreeSequence({3, 2, 2, 2, 1}), ForbiddenGraph(5, {{0, 4}}));
  EXPECT_EQ(p.E, 5);
  EXPECT_DOUBLE_EQ(p.d_avg, 2.0);
  EXPECT_DOUBLE_EQ(p.lambda, 0.5);
  const std::vector<double> expect{1.5, 0.0, 0.0, 0.0, -0.5};
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(p.delta[static_cast<std::size_t>(j)], expect[static_cast<std::size_t>(j)], 1e-15);
  EXPECT_DOUBLE_EQ(p.R, 2.0);
  EXPECT_DOUBLE_EQ(p.K, -1.0);
}

TEST(Parameters, DensityConstants) {
  auto p = compute_parameters(DegreeSequence({3, 2, 3, 2, 2}), ForbiddenGraph(5));
  const double l = p.lambda;
  EXPECT_NEAR(p.A, 0.5 * l * (1 - l), 1e-15);
  EXPECT_NEAR(p.A3, l * (1 - l) * (1 - 2 * l) / 6.0, 1e-15);
  EXPECT_NEAR(p.A4, l * (1 - l) * (1 - 6 * l + 6 * l * l) / 24.0, 1e-15);
}

TEST(Parameters, RandomIdentities) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 30;
    ForbiddenGraph g = random_graph(n, 0.5, rng);
    ForbiddenGraph x = random_graph(n, 0.1, rng);
    std::vector<int> deg(g.row_sums().begin(), g.row_sums().end());
    DegreeSequence d(deg);
    auto p = compute_parameters(d, x);
    // R_1 = 2 lambda X, checked exactly on the integer numerators.
    const std::int64_t num = std::accumulate(p.delta_num.begin(), p.delta_num.end(), std::int64_t{0});
    // delta_num / (n(n-1)) sums to 2 lambda X = 4EX / (n(n-1)).
    EXPECT_EQ(p.delta_den, static_cast<std::int64_t>(n) * (n - 1));
    EXPECT_EQ(num, 4 * p.E * p.X);
    EXPECT_NEAR(p.Rl[1], 2.0 * p.lambda * static_cast<double>(p.X), 1e-12 * (1.0 + p.X));
    double sum_b = 0.0;
    double pair_sum = 0.0;
    for (double b : p.B) sum_b += b;
    for (auto [j, k] : x.edges()) pair_sum += p.delta[static_cast<std::size_t>(j)] + p.delta[static_cast<std::size_t>(k)];
    EXPECT_NEAR(sum_b, pair_sum, 1e-9 * (1 + std::abs(pair_sum)));
    // Independent recomputation of the pair sums.
    double D = 0, H = 0, L = 0, K = 0;
    for (auto [j, k] : x.edges()) {
      const double dj = p.delta[static_cast<std::size_t>(j)], dk = p.delta[static_cast<std::size_t>(k)];
      const double xj = x.row_sum(j), xk = x.row_sum(k);
      D += dj * dk;
      H += xj * xk;
      L += (dj - xj) * (dk - xk);
      K += (deg[static_cast<std::size_t>(j)] - p.d_avg) * (deg[static_cast<std::size_t>(k)] - p.d_avg);
    }
    EXPECT_NEAR(p.D, D, 1e-9 * (1 + std::abs(D)));
    EXPECT_NEAR(p.H, H, 1e-12);
    EXPECT_NEAR(p.L, L, 1e-9 * (1 + std::abs(L)));
    EXPECT_NEAR(p.K, K, 1e-9 * (1 + std::abs(K)));
  }
}

TEST(Parameters, RegularDegenerations) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const int n = 10 + t;
    const int dd = (n % 2 == 0) ? n / 2 : (n - 1) / 2 + ((n - 1) / 2) % 2;
    DegreeSequence d = DegreeSequence::regular(n, dd);
    ForbiddenGraph x = random_graph(n, 0.15, rng);
    auto p = compute_parameters(d, x);
    const double l = p.lambda;
    EXPECT_NEAR(p.D, l * l * p.H, 1e-9 * (1 + p.H));
    EXPECT_NEAR(p.L, (1 - l) * (1 - l) * p.H, 1e-9 * (1 + p.H));
    EXPECT_EQ(p.K, 0.0);
    EXPECT_EQ(p.R, 0.0);
  }
}

TEST(Parameters, PermutationInvariance) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + t % 10;
    ForbiddenGraph g = random_graph(n, 0.5, rng);
    ForbiddenGraph x = random_graph(n, 0.2, rng);
    DegreeSequence d(std::vector<int>(g.row_sums().begin(), g.row_sums().end()));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto a = compute_parameters(d, x);
    auto b = compute_parameters(relabeled(d, perm), x.relabeled(perm));
    for (auto [u, v] : {std::pair{a.R, b.R}, {a.D, b.D}, {a.H, b.H}, {a.L, b.L}, {a.K, b.K}, {a.X2, b.X2},
                        {a.X3, b.X3}, {a.C11, b.C11}, {a.C12, b.C12}, {a.C21, b.C21}, {a.Rl[2], b.Rl[2]},
                        {a.Rl[3], b.Rl[3]}, {a.Rl[4], b.Rl[4]}}) {
      EXPECT_NEAR(u, v, 1e-9 * (1 + std::abs(u)));
    }
  }
}

TEST(Parameters, Errors) {
  EXPECT_THROW(compute_parameters(DegreeSequence({1, 1}), ForbiddenGraph(3)), InvalidInput);
  EXPECT_THROW(compute_parameters(DegreeSequence({0}), ForbiddenGraph(1)), InvalidInput);
}

TEST(InducedSpec, Examples) {
  auto w1 = induced_spec(DegreeSequence::regular(6, 3), ForbiddenGraph(6), 1);
  EXPECT_DOUBLE_EQ(w1(0, 0), 1.0);
  for (int l = 0; l <= 3; ++l) EXPECT_EQ(w1(1, l), 0.0);

  // n = 5, d = 2: lambda = 1/2.
  auto w2 = induced_spec(DegreeSequence::regular(5, 2), ForbiddenGraph(5, {{0, 1}}), 2);
  EXPECT_DOUBLE_EQ(w2(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(w2(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(w2(0, 2), 0.5);

  auto w3 = induced_spec(DegreeSequence({3, 2, 2, 2, 1}), ForbiddenGraph(5, {{0, 1}}), 2);
  EXPECT_DOUBLE_EQ(w3(1, 1), 0.5);

  EXPECT_THROW(induced_spec(DegreeSequence({3, 2, 2, 2, 1}), ForbiddenGraph(5, {{0, 4}}), 2), InvalidInput);
}
