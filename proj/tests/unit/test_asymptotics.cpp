#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "degenum/asymptotics.hpp"
#include "degenum/exact_count.hpp"
#include "degenum/saddle.hpp"

using namespace degenum;

namespace {

double lchoose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

ForbiddenGraph cycle(int n, int len) {
  std::vector<Edge> e;
  for (int j = 0; j < len; ++j) e.emplace_back(j, (j + 1) % len);
  return ForbiddenGraph(n, e);
}

double log_exact(const DegreeSequence& d, const ForbiddenGraph& x) {
  return std::log(exact_count(d, x).value.convert_to<double>());
}

}  // namespace

TEST(Naive, ClosedForm) {
  const Parameters p = compute_parameters(DegreeSequence({2, 2, 2, 2}), ForbiddenGraph(4));
  const double lam = 2.0 / 3.0;
  const double expect = 6.0 * (lam * std::log(lam) + (1 - lam) * std::log(1 - lam)) + 4.0 * lchoose(3, 2);
  EXPECT_NEAR(naive_estimate(p).log_value, expect, 1e-13);

  const Parameters q = compute_parameters(DegreeSequence({3, 2, 2, 2, 1}), ForbiddenGraph(5, {{1, 2}}));
  const double l2 = 10.0 / 20.0;
  const double e2 = -std::log(1 - l2) + 10.0 * (2 * l2 * std::log(l2)) + lchoose(4, 3) + 2 * lchoose(3, 2) +
                    lchoose(4, 2) + lchoose(4, 1);
  EXPECT_NEAR(naive_estimate(q).log_value, e2, 1e-13);

  // d_1 = 3 but only two allowed neighbours: the binomial vanishes.
  const Parameters z = compute_parameters(DegreeSequence({3, 1, 1, 1}), ForbiddenGraph(4, {{0, 1}}));
  EXPECT_EQ(naive_estimate(z).log_value, -std::numeric_limits<double>::infinity());
}

TEST(DenseCount, RegularCorrectionIsQuarter) {
  for (auto [n, dd] : {std::pair{10, 4}, std::pair{51, 20}, std::pair{200, 99}}) {
    const Parameters p = compute_parameters(DegreeSequence::regular(n, dd), ForbiddenGraph(n));
    const auto e = dense_count_estimate(p);
    EXPECT_DOUBLE_EQ(e.correction, 0.25);
    EXPECT_NEAR(e.base_log, 0.5 * std::numbers::ln2 + naive_estimate(p).log_value, 1e-12);
  }
}

TEST(DenseCount, CloseToExactCount) {
  // Near-regular degrees around half density, with and without one forbidden
  // edge. At these sizes the error is not monotone in n (the density moves
  // with n), so only bounds are pinned.
  for (bool with_edge : {false, true}) {
    for (int n = 6; n <= 10; ++n) {
      std::vector<int> deg(static_cast<std::size_t>(n), n / 2);
      deg[0] += 1;
      deg[1] -= (n / 2 * n) % 2 == 0 ? 1 : 0;
      const DegreeSequence d(deg);
      const ForbiddenGraph x = with_edge ? ForbiddenGraph(n, {{2, 3}}) : ForbiddenGraph(n);
      const double err = std::abs(std::expm1(dense_count_estimate(compute_parameters(d, x)).log_value - log_exact(d, x)));
      EXPECT_LT(err, 0.06) << "n=" << n;
      if (n == 10) EXPECT_LT(err, 0.03);
    }
  }
}

TEST(MissHit, EmptyXHasZeroCorrection) {
  const Parameters p = compute_parameters(DegreeSequence({5, 4, 4, 3, 3, 3, 2, 2}), ForbiddenGraph(8));
  const auto mh = miss_hit_estimate(p);
  EXPECT_EQ(mh.miss.correction, 0.0);
  EXPECT_EQ(mh.hit.correction, 0.0);
  EXPECT_EQ(miss_log_probability(p, mh.miss), 0.0);
}

TEST(MissHit, SingleEdgeAtHalfDensity) {
  // n = 101, d = 50: lambda = 1/2, X = 1, X2 = X3 = 2, H = 1. The flat terms
  // are 1/101 - 1/101 - 1/10201 + 1/10201 - 1/10201 for both events.
  const Parameters p = compute_parameters(DegreeSequence::regular(101, 50), ForbiddenGraph(101, {{0, 1}}));
  ASSERT_DOUBLE_EQ(p.lambda, 0.5);
  const auto mh = miss_hit_estimate(p);
  EXPECT_NEAR(mh.miss.correction, -1.0 / 10201.0, 1e-15);
  EXPECT_NEAR(mh.hit.correction, -1.0 / 10201.0, 1e-15);
  EXPECT_NEAR(miss_log_probability(p, mh.miss), std::log(0.5) - 1.0 / 10201.0, 1e-14);
  // By symmetry the true probability is exactly 1/2.
  EXPECT_NEAR(std::exp(hit_log_probability(p, mh.hit)), 0.5, 1e-4);
}

TEST(MissHit, ComplementDuality) {
  // G avoids X iff its complement, with degrees n-1-d_j, contains X.
  for (int n : {50, 100, 200}) {
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) deg[static_cast<std::size_t>(j)] = n / 3 + (j % 5) - 2;
    const ForbiddenGraph x(n, {{0, 1}, {1, 2}, {2, 0}, {5, 9}, {7, 11}, {7, 12}});
    const DegreeSequence d(deg);
    std::vector<int> comp(deg.size());
    for (std::size_t j = 0; j < deg.size(); ++j) comp[j] = n - 1 - deg[j];
    const Parameters p = compute_parameters(d, x);
    const Parameters q = compute_parameters(DegreeSequence(comp), x);
    const double miss = miss_log_probability(p, miss_hit_estimate(p).miss);
    const double hit = hit_log_probability(q, miss_hit_estimate(q).hit);
    EXPECT_NEAR(miss, hit, 1e-11 * std::abs(miss)) << "n=" << n;
  }
}

TEST(MissHit, FlatCaseEqualsGeneralForRegularDegrees) {
  const int n = 40;
  const ForbiddenGraph x(n, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {6, 7}, {7, 8}});
  const Parameters p = compute_parameters(DegreeSequence::regular(n, 13), x);
  const auto general = miss_hit_estimate(p);
  const auto flat = specialized_estimates(p, SpecialCase::Flat);
  EXPECT_NEAR(general.miss.correction, flat.miss.correction, 1e-15);
  EXPECT_NEAR(general.hit.correction, flat.hit.correction, 1e-15);
  EXPECT_THROW(specialized_estimates(compute_parameters(DegreeSequence({2, 2, 1, 1}), ForbiddenGraph(4)), SpecialCase::Flat),
               InvalidInput);
}

TEST(MissHit, RegCaseVanishesForCycleInRegularGraph) {
  const int n = 30;
  const Parameters p = compute_parameters(DegreeSequence::regular(n, 10), cycle(n, n));
  const auto reg = specialized_estimates(p, SpecialCase::Reg);
  EXPECT_EQ(reg.miss.correction, 0.0);
  EXPECT_EQ(reg.hit.correction, 0.0);
  EXPECT_THROW(specialized_estimates(compute_parameters(DegreeSequence::regular(6, 3), ForbiddenGraph(6, {{0, 1}})),
                                     SpecialCase::Reg),
               InvalidInput);
}

TEST(MissHit, TracksExactProbability) {
  const DegreeSequence d = DegreeSequence::regular(10, 4);
  const ForbiddenGraph x(10, {{0, 1}, {1, 2}});
  const Parameters p = compute_parameters(d, x);
  const double exact = exact_probability(d, x, Event::miss()).convert_to<double>();
  const double est = std::exp(miss_log_probability(p, miss_hit_estimate(p).miss));
  EXPECT_NEAR(est / exact, 1.0, 0.05);
}

TEST(Induced, EmptyOrderIsZero) {
  const Parameters p = compute_parameters(DegreeSequence::regular(12, 5), ForbiddenGraph(12));
  for (auto model : {InducedModel::Full, InducedModel::LambdaModel, InducedModel::Leading}) {
    EXPECT_EQ(induced_estimate(p, ForbiddenGraph(12), 0, model).log_value, 0.0);
  }
}

TEST(Induced, FullAndLeadingConverge) {
  double prev = 1.0;
  for (int n : {40, 80, 160, 320}) {
    std::vector<int> deg(static_cast<std::size_t>(n), n / 2);
    deg[0] += 2;
    deg[1] -= 2;
    const DegreeSequence d(deg);
    const ForbiddenGraph x(n, {{0, 1}, {1, 2}, {2, 3}});
    const Parameters p = compute_parameters(d, x);
    const double full = induced_estimate(p, x, 4, InducedModel::Full).log_value;
    const double lead = induced_estimate(p, x, 4, InducedModel::Leading).log_value;
    const double diff = std::abs(full - lead);
    EXPECT_LT(diff, prev) << "n=" << n;
    prev = diff;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Induced, SupportCondition) {
  const Parameters p = compute_parameters(DegreeSequence::regular(8, 3), ForbiddenGraph(8, {{0, 5}}));
  EXPECT_THROW(induced_estimate(p, ForbiddenGraph(8, {{0, 5}}), 3, InducedModel::Full), InvalidInput);
}

TEST(LambdaJk, ExpansionMatchesSaddle) {
  double prev = 1.0;
  for (int n : {40, 80, 160}) {
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) deg[static_cast<std::size_t>(j)] = n / 2 + (j % 2 == 0 ? 1 : -1);
    const DegreeSequence d(deg);
    const Parameters p = compute_parameters(d, ForbiddenGraph(n));
    const SaddlePoint sp = solve_saddle(d, ForbiddenGraph(n));
    double err = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        EXPECT_DOUBLE_EQ(lambda_jk_expansion(p, j, k), lambda_jk_expansion(p, k, j));
        err = std::max(err, std::abs(lambda_jk_expansion(p, j, k) - sp.lambda_at(j, k)));
      }
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 2.5e-4);
  const Parameters reg = compute_parameters(DegreeSequence::regular(9, 4), ForbiddenGraph(9));
  EXPECT_DOUBLE_EQ(lambda_jk_expansion(reg, 2, 7), 0.5);
  EXPECT_THROW(lambda_jk_expansion(reg, 3, 3), InvalidInput);

  // d = (3,2,2,2,1): lambda = 1/2 kills the product term; d_1 - d = 1, d_5 - d = -1.
  const Parameters q = compute_parameters(DegreeSequence({3, 2, 2, 2, 1}), ForbiddenGraph(5));
  EXPECT_DOUBLE_EQ(lambda_jk_expansion(q, 0, 4), 0.5);
  EXPECT_DOUBLE_EQ(lambda_jk_expansion(q, 0, 1), 0.7);
}

TEST(Overlap, BinomialLaw) {
  const Parameters p = compute_parameters(DegreeSequence::regular(9, 2), ForbiddenGraph(9));
  double sum = 0.0;
  for (int k = 0; k <= 6; ++k) sum += overlap_distribution_estimate(p, 6, k);
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_NEAR(overlap_distribution_estimate(p, 6, 2), 15.0 * 0.0625 * std::pow(0.75, 4), 1e-15);
  EXPECT_THROW(overlap_distribution_estimate(p, 6, 7), InvalidInput);
}

TEST(Sparse, McKay81AndPerth) {
  const Parameters p = compute_parameters(DegreeSequence({1, 1, 1, 1}), ForbiddenGraph(4, {{0, 1}}));
  // (1)_1 (1)_1 / (2 (2)_1) = 1/4.
  EXPECT_NEAR(sparse_estimate(p, ForbiddenGraph(4, {{0, 1}}), SparseFormula::McKay81).log_value, std::log(0.25), 1e-14);

  const DegreeSequence d({3, 3, 2, 2, 2, 1, 1});
  const ForbiddenGraph x(7, {{0, 1}, {2, 5}});
  const Parameters q = compute_parameters(d, x);
  const double E = 7.0;
  const double s2 = 3 * 2 * 2 + 2 * 1 * 3;
  double base = std::lgamma(2 * E + 1) - std::lgamma(E + 1) - E * std::log(2.0);
  for (int v : {3, 3, 2, 2, 2, 1, 1}) base -= std::lgamma(v + 1.0);
  const double expect = base - s2 / (4 * E) - s2 * s2 / (16 * E * E) - (9.0 + 2.0) / (2 * E);
  EXPECT_NEAR(sparse_estimate(q, x, SparseFormula::Perth).log_value, expect, 1e-12);
}

TEST(RegularExpectations, ClosedForms) {
  // Cycles of full length: the correction carries the factor (n - q).
  EXPECT_EQ(regular_graph_expectation(12, 4, RegularTarget::Cycles, 12).correction, 0.0);
  const double lam = 4.0 / 11.0;
  const auto m = regular_graph_expectation(12, 4, RegularTarget::Matchings);
  EXPECT_NEAR(m.base_log, 6 * std::log(lam) + std::lgamma(13.0) - 6 * std::log(2.0) - std::lgamma(7.0), 1e-12);
  EXPECT_NEAR(m.correction, (1 - lam) / (4 * lam), 1e-15);
  const auto t = regular_graph_expectation(12, 4, RegularTarget::SpanningTrees);
  EXPECT_NEAR(t.base_log, 10 * std::log(12.0) + 11 * std::log(lam), 1e-12);
  // Complete graph: lambda = 1 and every correction vanishes; n^(n-2) trees, (n-1)!/2 Hamilton cycles.
  EXPECT_NEAR(regular_graph_expectation(7, 6, RegularTarget::SpanningTrees).log_value, 5 * std::log(7.0), 1e-12);
  EXPECT_NEAR(regular_graph_expectation(7, 6, RegularTarget::Cycles, 7).log_value, std::log(360.0), 1e-12);
  EXPECT_THROW(regular_graph_expectation(7, 2, RegularTarget::Matchings), InvalidInput);
  EXPECT_THROW(regular_graph_expectation(7, 3, RegularTarget::Cycles, 3), InvalidInput);
  EXPECT_THROW(regular_graph_expectation(8, 3, RegularTarget::Cycles, 2), InvalidInput);
}

TEST(Validity, Flags) {
  const Parameters good = compute_parameters(DegreeSequence::regular(100, 50), ForbiddenGraph(100));
  EXPECT_TRUE(check_validity(good).ok());
  const Parameters sparse = compute_parameters(DegreeSequence::regular(100, 3), ForbiddenGraph(100));
  EXPECT_FALSE(check_validity(sparse).ok());
  EXPECT_FALSE(check_validity(good, AdvisoryConstants{0.3, 0.3}).ok());
}

TEST(Density, DegenerateThrows) {
  const Parameters empty = compute_parameters(DegreeSequence({0, 0, 0, 0}), ForbiddenGraph(4));
  EXPECT_THROW(dense_count_estimate(empty), DegenerateDensity);
  EXPECT_THROW(miss_hit_estimate(empty), DegenerateDensity);
  const Parameters full = compute_parameters(DegreeSequence::regular(5, 4), ForbiddenGraph(5));
  EXPECT_THROW(dense_count_estimate(full), DegenerateDensity);
}
