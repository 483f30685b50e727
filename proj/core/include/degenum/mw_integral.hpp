#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "degenum/graph_types.hpp"

namespace degenum {

using cplx = std::complex<double>;

/// Coefficients of the perturbed Gaussian integrand
///
///   f(z) = exp(-A N sum z_j^2 + sum J_j z_j + N^(1/2) sum a_j z_j^2 + N sum B_j z_j^3
///              + sum' C_jk z_j z_k^2 + N^-1 sum' D_jkl z_j z_k z_l + N sum E_j z_j^4
///              + sum' F_jk z_j^2 z_k^2 + N^(1/2) sum' G_jk z_j z_k^3
///              + N^(-1/2) sum' H_jkl z_j z_k z_l^2 + N^(-3/2) sum' I_jklm z_j z_k z_l z_m)
///
/// over the box |z_j| <= N^(-1/2 + eps_hat). Primed sums run over distinct
/// indices; table entries with repeated indices are ignored. Empty tables
/// mean zero.
struct CoefficientSet {
  int N = 0;
  double A = 0.0;
  double eps_hat = 0.25;
  std::vector<cplx> J, a, B, E;        ///< length N
  std::vector<cplx> C, F, G;           ///< N x N, row-major
  std::vector<cplx> D, H;              ///< N^3
  std::vector<cplx> I;                 ///< N^4

  static CoefficientSet zeros(int N, double A, double eps_hat);
  /// Throws InvalidInput on wrong table sizes or A <= 0.
  void validate() const;
  [[nodiscard]] double box_half_width() const;
  /// log of f(z).
  [[nodiscard]] cplx log_integrand(const std::vector<double>& z) const;
};

/// JSON document: {"N":..,"A":..,"epsHat":..,"J":[..],"C":[[..]],...}. Complex
/// entries are numbers or [re, im] pairs; 3- and 4-index tables are flat
/// row-major arrays.
CoefficientSet parse_coefficients(std::string_view json_text);

/// Leading correction exponent of the box integral relative to (pi/(AN))^(N/2).
cplx theta1(const CoefficientSet& c);

/// Named summands of theta1, in display order.
std::vector<std::pair<std::string, cplx>> theta1_terms(const CoefficientSet& c);

/// Control factor built from the imaginary parts of the coefficients.
double z_factor(const CoefficientSet& c);

class DegenerateProposal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoxIntegralResult {
  cplx mean;                ///< estimate of the integral over the box
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  cplx ratio;               ///< mean / (pi/(AN))^(N/2)
  double ratio_stderr_re = 0.0;
  double ratio_stderr_im = 0.0;
  double log_gaussian = 0.0;  ///< (N/2) ln(pi/(AN))
  double box_mass = 0.0;      ///< Gaussian mass of the box
  double acceptance = 0.0;    ///< fraction of proposals inside the box
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int streams = 0;
};

struct BoxIntegralConfig {
  std::int64_t samples = 100000;
  std::uint64_t seed = 20240601;
  int streams = 8;        ///< independent RNG streams; fixed for reproducibility
  int threads = 1;
  double min_box_mass = 0.5;
};

/// Importance-sampled estimate of the box integral. Proposals are drawn from
/// the Gaussian exp(-A N sum z^2); proposals outside the box are rejected and
/// score zero. Stream s uses seed splitmix64(seed + s).
BoxIntegralResult mc_box_integral(const CoefficientSet& c, const BoxIntegralConfig& config);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace degenum
