#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "degenum/graph_types.hpp"

namespace degenum {

/// Exact non-negative rational with 64-bit parts, kept for the quantities
/// that are rational in the integer inputs (average degree, density).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  [[nodiscard]] double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Every scalar and per-vertex quantity used by the estimators.
///
/// Sums over X run over unordered pairs. Sums involving delta are computed
/// exactly in rational arithmetic and rounded once.
struct Parameters {
  int n = 0;
  std::int64_t E = 0;          ///< edges of the target graphs
  std::int64_t X = 0;          ///< edges of the forbidden graph
  Fraction d_avg_exact;        ///< 2E/n
  Fraction lambda_exact;       ///< 2E/(n(n-1))
  double d_avg = 0.0;
  double lambda = 0.0;
  double A = 0.0;
  double A3 = 0.0;
  double A4 = 0.0;

  std::vector<int> degrees;
  std::vector<int> x;  ///< row sums of X

  /// delta_j = d_j - d + lambda x_j, exactly delta_num[j] / delta_den.
  std::vector<std::int64_t> delta_num;
  std::int64_t delta_den = 1;
  std::vector<double> delta;
  std::vector<double> B;  ///< B_j = sum_{k in X(j)} delta_k

  double R = 0.0;                  ///< sum (d_j - d)^2
  std::array<double, 5> Rl{};      ///< Rl[l] = sum delta_j^l, l = 1..4 (Rl[0] = n)
  double X2 = 0.0;
  double X3 = 0.0;
  double D = 0.0;
  double H = 0.0;
  double L = 0.0;
  double K = 0.0;
  double C11 = 0.0;
  double C12 = 0.0;
  double C21 = 0.0;

  int d_max = 0;
  int x_max = 0;
  double Delta_sparse = 0.0;  ///< d_max (d_max + x_max)

  [[nodiscard]] double R2() const noexcept { return Rl[2]; }
};

/// Throws InvalidInput on a dimension mismatch or n < 2.
Parameters compute_parameters(const DegreeSequence& d, const ForbiddenGraph& x);

/// omega_{k,l} = sum_{j<m} (d_j - d)^k (x_j - lambda (m-1))^l for k, l <= 3.
struct InducedSpec {
  int m = 0;
  std::array<std::array<double, 4>, 4> omega{};
  [[nodiscard]] double operator()(int k, int l) const {
    return omega[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
  }
};

/// Throws InvalidInput unless x_j = 0 for every j >= m (0-indexed).
InducedSpec induced_spec(const DegreeSequence& d, const ForbiddenGraph& x, int m);
InducedSpec induced_spec(const Parameters& p, int m);

}  // namespace degenum
