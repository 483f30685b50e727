#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "degenum/graph_types.hpp"
#include "degenum/parameters.hpp"

namespace degenum {

struct Term {
  std::string name;
  double value = 0.0;
};

/// A log-scale estimate: log_value = base_log + correction, where correction
/// is the sum of `terms` (the argument of the exponential).
struct LogEstimate {
  double log_value = 0.0;
  double base_log = 0.0;
  double correction = 0.0;
  std::string error_order;
  std::vector<Term> terms;

  static LogEstimate make(double base_log, std::vector<Term> terms, std::string error_order);
  /// Value of the named term; throws std::out_of_range if absent.
  [[nodiscard]] double term(const std::string& name) const;
};

struct ValidityFlag {
  std::string hypothesis;
  double measured = 0.0;
  double threshold = 0.0;
};

/// Hypotheses of the dense counting theorem that fail for the given input.
/// Advisory only: estimators still evaluate.
struct ValidityReport {
  std::vector<ValidityFlag> flags;
  [[nodiscard]] bool ok() const noexcept { return flags.empty(); }
};

struct AdvisoryConstants {
  double a = 0.25;
  double b = 0.2;
};

/// Thrown when lambda is 0 or 1 and the estimator divides by lambda(1-lambda).
class DegenerateDensity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Independent-edge guess: -X ln(1-lambda) + C(n,2) H(lambda) + sum ln C(n-1-x_j, d_j).
/// Returns log_value = -inf when some binomial vanishes.
LogEstimate naive_estimate(const Parameters& p);

ValidityReport check_validity(const Parameters& p, const AdvisoryConstants& advisory = {});

/// ln sqrt2 + ln Ghat + 1/4 - R^2/(16A^2n^4) + lambda X^2/((1-lambda)n^2) - D/(2An^2).
LogEstimate dense_count_estimate(const Parameters& p);

struct MissHit {
  LogEstimate miss;
  LogEstimate hit;
  LogEstimate num;
};

/// Corrections of P(no edge of X) = (1-lambda)^X miss and
/// P(X subgraph) = lambda^X hit, plus num (the exponential factor of the
/// dense count).
MissHit miss_hit_estimate(const Parameters& p);

enum class SpecialCase { Flat, Reg };

/// Flat: every d_j equal. Reg: every x_j equal. Throws InvalidInput otherwise.
MissHit specialized_estimates(const Parameters& p, SpecialCase which);

/// Log-probabilities: log of (1-lambda)^X miss and lambda^X hit.
double miss_log_probability(const Parameters& p, const LogEstimate& miss);
double hit_log_probability(const Parameters& p, const LogEstimate& hit);

enum class InducedModel { Full, LambdaModel, Leading };

/// Log-probability that vertices 1..m induce exactly X.
LogEstimate induced_estimate(const Parameters& p, const ForbiddenGraph& x, int m, InducedModel model);

/// lambda + (d_j-d)/n + (d_k-d)/n + (1-2lambda)(d_j-d)(d_k-d)/(2An^2).
double lambda_jk_expansion(const Parameters& p, int j, int k);

/// Binomial reference law C(Y,k) lambda^k (1-lambda)^(Y-k).
double overlap_distribution_estimate(const Parameters& p, std::int64_t y_edges, std::int64_t k);

enum class SparseFormula { Perth, McKay81 };

/// Perth: log of the sparse count of G(d,X).
/// McKay81: log of P(X subgraph) = prod (d_j)_{x_j} / (2^X (E)_X).
LogEstimate sparse_estimate(const Parameters& p, const ForbiddenGraph& x, SparseFormula which);

enum class RegularTarget { Matchings, Cycles, SpanningTrees };

/// Log expected number of the target structure in a random d-regular graph
/// on n vertices. `q` is the cycle length (Cycles only).
LogEstimate regular_graph_expectation(int n, int d, RegularTarget target, int q = 0);

}  // namespace degenum
