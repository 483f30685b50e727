#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "degenum/exact_count.hpp"
#include "degenum/graph_types.hpp"
#include "degenum/parameters.hpp"

namespace degenum {

class SaddleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SaddleMode {
  FixedIterations,  ///< exactly `fixed_iterations` sweeps of the contraction map from a = 0
  Converge,         ///< iterate until the degree residual drops below `tol`
};

enum class SaddleMethod { Contraction, Newton, GivenRadii };

struct SaddleConfig {
  SaddleMode mode = SaddleMode::Converge;
  int fixed_iterations = 4;
  int max_iter = 500;
  double tol = 1e-12;
  bool newton_fallback = true;
};

/// Radii r_j of the Cauchy contours, in the a-parametrisation
/// r_j = r (1 + a_j) / (1 - r^2 a_j), r = sqrt(lambda / (1 - lambda)).
struct SaddlePoint {
  int n = 0;
  double lambda = 0.0;
  double r = 0.0;
  std::vector<double> a;
  std::vector<double> radii;
  /// lambda_jk = r_j r_k / (1 + r_j r_k), dense n x n with zero diagonal.
  std::vector<double> lambda_jk;
  /// lambda_{j.|Xbar} - d_j.
  std::vector<double> residual;
  int iterations = 0;
  SaddleMethod method = SaddleMethod::Contraction;

  [[nodiscard]] double lambda_at(int j, int k) const {
    return lambda_jk[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(k)];
  }
  [[nodiscard]] double max_residual() const noexcept;
};

/// Z_jk of the identity lambda_jk / lambda = 1 + a_j + a_k + Z_jk.
double z_jk(double a_j, double a_k, double r_squared) noexcept;

/// One sweep a -> (A_1(a), ..., A_n(a)) of the contraction map.
std::vector<double> contraction_step(const Parameters& p, const ForbiddenGraph& x,
                                     std::span<const double> a);

/// Requires 0 < d_j < n-1-x_j for every j and n >= 3. Throws SaddleError on
/// a pole (r^2 a_j >= 1), on divergence without fallback, or when the Newton
/// fallback cannot reach the tolerance.
SaddlePoint solve_saddle(const DegreeSequence& d, const ForbiddenGraph& x,
                         const SaddleConfig& config = {});

/// Saddle record for arbitrary positive radii (the contour identity holds for
/// any radii); `a` is recovered from the radii.
SaddlePoint saddle_from_radii(const DegreeSequence& d, const ForbiddenGraph& x,
                              std::vector<double> radii);

/// alpha, beta, gamma: second/third/fourth cumulant weights of lambda_jk
/// minus their values at lambda. Dense, zero diagonal.
struct AbgCoefficients {
  int n = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;
  [[nodiscard]] std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
  }
};

AbgCoefficients abg_coefficients(const SaddlePoint& sp);

/// ln P = sum_{jk in Xbar} ln(1 + r_j r_k) - n ln(2 pi) - sum_j d_j ln r_j.
double log_prefactor(const SaddlePoint& sp, const DegreeSequence& d, const ForbiddenGraph& x);

struct ModulusResult {
  double modulus = 0.0;
  double log_modulus = 0.0;
  /// prod exp(-q z^2 + q z^4 / 12) over the same pairs.
  double bound = 0.0;
  double log_bound = 0.0;
};

/// |F(theta)| = prod_{jk in Xbar} sqrt(1 - 4 q_jk (1 - cos(theta_j + theta_k))),
/// q_jk = lambda_jk (1 - lambda_jk) / 2.
ModulusResult integrand_modulus(const SaddlePoint& sp, std::span<const double> theta,
                                const ForbiddenGraph& x);

struct QuadratureConfig {
  int initial_grid = 4;
  double rel_tol = 1e-8;
  std::int64_t max_points = std::int64_t{1} << 25;
  int max_n = 5;
};

struct QuadratureResult {
  std::complex<double> value;
  int grid = 0;            ///< points per angle in the final rule
  double change = 0.0;     ///< |I_grid - I_{grid/2}|
  double abs_integral = 0.0;  ///< trapezoidal estimate of the integral of |F|
};

/// Tensor trapezoidal rule for the n-fold angular integral over [-pi, pi]^n,
/// doubling the grid until successive values agree.
QuadratureResult integral_quadrature(const SaddlePoint& sp, const DegreeSequence& d,
                                     const ForbiddenGraph& x, const QuadratureConfig& config = {});

struct ContourCheck {
  BigInt exact;
  double log_prefactor = 0.0;
  std::complex<double> integral;
  double product = 0.0;      ///< P * Re(I)
  double rel_error = 0.0;    ///< |P I - G| / G, or |P I| when G = 0
  double imag_ratio = 0.0;   ///< |Im I| / |I|
  int grid = 0;
  bool saddle_radii = false; ///< false when unit radii were used
};

/// Checks G(d,X) = P(d,X) I(d,X) against the exact count. Uses the saddle
/// radii when the saddle exists, unit radii otherwise.
ContourCheck verify_start(const DegreeSequence& d, const ForbiddenGraph& x,
                          const QuadratureConfig& config = {});

}  // namespace degenum
