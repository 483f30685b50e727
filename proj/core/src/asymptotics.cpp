#include "degenum/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "degenum/numeric.hpp"

namespace degenum {

namespace {

void require_interior_density(const Parameters& p) {
  if (!(p.lambda > 0.0 && p.lambda < 1.0)) {
    throw DegenerateDensity("density lambda must lie strictly between 0 and 1");
  }
}

double sq(double v) { return v * v; }

}  // namespace

LogEstimate LogEstimate::make(double base_log, std::vector<Term> terms, std::string error_order) {
  LogEstimate e;
  e.base_log = base_log;
  CompensatedSum s;
  for (const auto& t : terms) s += t.value;
  e.correction = s.value();
  e.log_value = base_log + e.correction;
  e.terms = std::move(terms);
  e.error_order = std::move(error_order);
  return e;
}

double LogEstimate::term(const std::string& name) const {
  for (const auto& t : terms)
    if (t.name == name) return t.value;
  throw std::out_of_range("no term named " + name);
}

LogEstimate naive_estimate(const Parameters& p) {
  const double n = p.n;
  const double lam = p.lambda;
  const double pairs = n * (n - 1.0) / 2.0;
  CompensatedSum s;
  if (p.X > 0) s += -static_cast<double>(p.X) * std::log1p(-lam);
  s += pairs * (xlogx(lam) + xlogx(1.0 - lam));
  for (int j = 0; j < p.n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const double lb = log_binomial(p.n - 1 - p.x[uj], p.degrees[uj]);
    if (!std::isfinite(lb)) {
      return LogEstimate::make(-std::numeric_limits<double>::infinity(), {}, "exact zero");
    }
    s += lb;
  }
  return LogEstimate::make(s.value(), {}, "heuristic");
}

ValidityReport check_validity(const Parameters& p, const AdvisoryConstants& advisory) {
  ValidityReport report;
  const double n = p.n;
  if (!(advisory.a > 0.0 && advisory.b > 0.0 && advisory.a + advisory.b < 0.5)) {
    report.flags.push_back({"a > 0, b > 0, a + b < 1/2", advisory.a + advisory.b, 0.5});
  }
  double max_dev = 0.0;
  for (int v : p.degrees) max_dev = std::max(max_dev, std::abs(v - p.d_avg));
  const double root_n = std::sqrt(n);
  if (max_dev > root_n) report.flags.push_back({"max |d_j - d| <= n^(1/2)", max_dev, root_n});
  if (p.x_max > root_n) report.flags.push_back({"max x_j <= n^(1/2)", static_cast<double>(p.x_max), root_n});
  if (static_cast<double>(p.X) > n) report.flags.push_back({"X <= n", static_cast<double>(p.X), n});
  const double spread = std::min(p.d_avg, n - p.d_avg - 1.0);
  const double need = n / (3.0 * advisory.a * std::log(n));
  if (spread < need) report.flags.push_back({"min{d, n-d-1} >= n/(3a log n)", spread, need});
  return report;
}

LogEstimate dense_count_estimate(const Parameters& p) {
  require_interior_density(p);
  const double n = p.n;
  const double lam = p.lambda;
  const double A = p.A;
  const double X = static_cast<double>(p.X);
  const LogEstimate naive = naive_estimate(p);
  std::vector<Term> terms{
      {"1/4", 0.25},
      {"-R^2/(16A^2n^4)", -sq(p.R) / (16.0 * A * A * std::pow(n, 4))},
      {"lambda X^2/((1-lambda)n^2)", lam * X * X / ((1.0 - lam) * n * n)},
      {"-D/(2An^2)", -p.D / (2.0 * A * n * n)},
  };
  return LogEstimate::make(0.5 * std::numbers::ln2 + naive.log_value, std::move(terms), "O(n^-b)");
}

MissHit miss_hit_estimate(const Parameters& p) {
  require_interior_density(p);
  const double n = p.n;
  const double n2 = n * n;
  const double lam = p.lambda;
  const double mu = 1.0 - lam;
  const double X = static_cast<double>(p.X);
  MissHit out;
  out.miss = LogEstimate::make(
      0.0,
      {
          {"lambda X/((1-lambda)n)", lam * X / (mu * n)},
          {"lambda X2/(2(1-lambda)n)", lam * p.X2 / (2.0 * mu * n)},
          {"lambda(1-2lambda)X3/(6(1-lambda)^2n^2)", lam * (1.0 - 2.0 * lam) * p.X3 / (6.0 * mu * mu * n2)},
          {"lambda X^2/((1-lambda)n^2)", lam * X * X / (mu * n2)},
          {"-D/(lambda(1-lambda)n^2)", -p.D / (lam * mu * n2)},
          {"-C11/((1-lambda)n)", -p.C11 / (mu * n)},
          {"-(1-2lambda)C12/(2(1-lambda)^2n^2)", -(1.0 - 2.0 * lam) * p.C12 / (2.0 * mu * mu * n2)},
          {"-C21/(2(1-lambda)^2n^2)", -p.C21 / (2.0 * mu * mu * n2)},
      },
      "O(n^-b)");
  out.hit = LogEstimate::make(
      0.0,
      {
          {"(1-lambda)X/(lambda n)", mu * X / (lam * n)},
          {"-(1+lambda)X2/(2lambda n)", -(1.0 + lam) * p.X2 / (2.0 * lam * n)},
          {"-(1+lambda)(1+2lambda)X3/(6lambda^2n^2)", -(1.0 + lam) * (1.0 + 2.0 * lam) * p.X3 / (6.0 * lam * lam * n2)},
          {"(1-lambda)X^2/(lambda n^2)", mu * X * X / (lam * n2)},
          {"-L/(lambda(1-lambda)n^2)", -p.L / (lam * mu * n2)},
          {"C11/(lambda n)", p.C11 / (lam * n)},
          {"(1+2lambda)C12/(2lambda^2n^2)", (1.0 + 2.0 * lam) * p.C12 / (2.0 * lam * lam * n2)},
          {"-C21/(2lambda^2n^2)", -p.C21 / (2.0 * lam * lam * n2)},
      },
      "O(n^-b)");
  LogEstimate dense = dense_count_estimate(p);
  out.num = LogEstimate::make(0.0, dense.terms, dense.error_order);
  return out;
}

MissHit specialized_estimates(const Parameters& p, SpecialCase which) {
  require_interior_density(p);
  const double n = p.n;
  const double n2 = n * n;
  const double lam = p.lambda;
  const double mu = 1.0 - lam;
  const double X = static_cast<double>(p.X);
  MissHit out;
  if (which == SpecialCase::Flat) {
    if (!std::all_of(p.degrees.begin(), p.degrees.end(), [&](int v) { return v == p.degrees.front(); })) {
      throw InvalidInput("flat case requires a regular degree sequence");
    }
    out.num = LogEstimate::make(0.0,
                                {{"1/4", 0.25}, {"lambda(X^2-H)/((1-lambda)n^2)", lam * (X * X - p.H) / (mu * n2)}},
                                "O(n^-b)");
    out.miss = LogEstimate::make(
        0.0,
        {
            {"lambda X/((1-lambda)n)", lam * X / (mu * n)},
            {"-lambda X2/(2(1-lambda)n)", -lam * p.X2 / (2.0 * mu * n)},
            {"-lambda(2-lambda)X3/(6(1-lambda)^2n^2)", -lam * (2.0 - lam) * p.X3 / (6.0 * mu * mu * n2)},
            {"lambda X^2/((1-lambda)n^2)", lam * X * X / (mu * n2)},
            {"-lambda H/((1-lambda)n^2)", -lam * p.H / (mu * n2)},
        },
        "O(n^-b)");
    out.hit = LogEstimate::make(
        0.0,
        {
            {"(1-lambda)X/(lambda n)", mu * X / (lam * n)},
            {"-(1-lambda)X2/(2lambda n)", -mu * p.X2 / (2.0 * lam * n)},
            {"-(1-lambda^2)X3/(6lambda^2n^2)", -(1.0 - lam * lam) * p.X3 / (6.0 * lam * lam * n2)},
            {"(1-lambda)X^2/(lambda n^2)", mu * X * X / (lam * n2)},
            {"-(1-lambda)H/(lambda n^2)", -mu * p.H / (lam * n2)},
        },
        "O(n^-b)");
    return out;
  }
  if (!std::all_of(p.x.begin(), p.x.end(), [&](int v) { return v == p.x.front(); })) {
    throw InvalidInput("reg case requires every x_j to be equal");
  }
  const double xc = p.x.front();
  const double A = p.A;
  out.num = LogEstimate::make(0.0,
                              {
                                  {"1/4", 0.25},
                                  {"lambda x^2/(4(1-lambda))", lam * xc * xc / (4.0 * mu)},
                                  {"-K/(2An^2)", -p.K / (2.0 * A * n2)},
                                  {"-R^2/(16A^2n^4)", -sq(p.R) / (16.0 * A * A * n2 * n2)},
                              },
                              "O(n^-b)");
  out.miss = LogEstimate::make(0.0,
                               {
                                   {"-lambda x(x-2)/(4(1-lambda))", -lam * xc * (xc - 2.0) / (4.0 * mu)},
                                   {"-xR/(2(1-lambda)^2n^2)", -xc * p.R / (2.0 * mu * mu * n2)},
                                   {"-K/(2An^2)", -p.K / (2.0 * A * n2)},
                               },
                               "O(n^-b)");
  out.hit = LogEstimate::make(0.0,
                              {
                                  {"-(1-lambda)x(x-2)/(4lambda)", -mu * xc * (xc - 2.0) / (4.0 * lam)},
                                  {"-xR/(2lambda^2n^2)", -xc * p.R / (2.0 * lam * lam * n2)},
                                  {"-K/(2An^2)", -p.K / (2.0 * A * n2)},
                              },
                              "O(n^-b)");
  return out;
}

double miss_log_probability(const Parameters& p, const LogEstimate& miss) {
  return static_cast<double>(p.X) * std::log1p(-p.lambda) + miss.log_value;
}

double hit_log_probability(const Parameters& p, const LogEstimate& hit) {
  return static_cast<double>(p.X) * std::log(p.lambda) + hit.log_value;
}

double lambda_jk_expansion(const Parameters& p, int j, int k) {
  if (j == k) throw InvalidInput("lambda_jk expansion needs j != k");
  const double n = p.n;
  const double ej = p.degrees[static_cast<std::size_t>(j)] - p.d_avg;
  const double ek = p.degrees[static_cast<std::size_t>(k)] - p.d_avg;
  return p.lambda + ej / n + ek / n + (1.0 - 2.0 * p.lambda) * ej * ek / (2.0 * p.A * n * n);
}

LogEstimate induced_estimate(const Parameters& p, const ForbiddenGraph& x, int m, InducedModel model) {
  require_interior_density(p);
  const InducedSpec w = induced_spec(p, m);
  const double n = p.n;
  const double n2 = n * n;
  const double lam = p.lambda;
  const double A = p.A;
  const double md = m;
  const double X = static_cast<double>(p.X);
  const double pairs = md * (md - 1.0) / 2.0;
  const double er_base = X * std::log(lam) + (pairs - X) * std::log1p(-lam);

  switch (model) {
    case InducedModel::Full:
      return LogEstimate::make(
          er_base,
          {
              {"(2w11-w02)/(4An)", (2.0 * w(1, 1) - w(0, 2)) / (4.0 * A * n)},
              {"m^2/(2n)", md * md / (2.0 * n)},
              {"(1-2lambda)w01/(4An)", (1.0 - 2.0 * lam) * w(0, 1) / (4.0 * A * n)},
              {"(4w10w01-w01^2-2w10^2)/(8An^2)",
               (4.0 * w(1, 0) * w(0, 1) - sq(w(0, 1)) - 2.0 * sq(w(1, 0))) / (8.0 * A * n2)},
              {"(2w11-w20-w02)m/(4An^2)", (2.0 * w(1, 1) - w(2, 0) - w(0, 2)) * md / (4.0 * A * n2)},
              {"-(1-2lambda)(w03+3w21-3w12)/(24A^2n^2)",
               -(1.0 - 2.0 * lam) * (w(0, 3) + 3.0 * w(2, 1) - 3.0 * w(1, 2)) / (24.0 * A * A * n2)},
          },
          "O(n^-b)");
    case InducedModel::Leading:
      return LogEstimate::make(er_base,
                               {
                                   {"w11/(2An)", w(1, 1) / (2.0 * A * n)},
                                   {"-w02/(4An)", -w(0, 2) / (4.0 * A * n)},
                               },
                               "o(1)");
    case InducedModel::LambdaModel: {
      CompensatedSum base;
      for (int j = 0; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          const double l = lambda_jk_expansion(p, j, k);
          base += x.has_edge(j, k) ? std::log(l) : std::log1p(-l);
        }
      }
      return LogEstimate::make(
          base.value(),
          {
              {"-w02/(4An)", -w(0, 2) / (4.0 * A * n)},
              {"m^2/(2n)", md * md / (2.0 * n)},
              {"(1-2lambda)w01/(4An)", (1.0 - 2.0 * lam) * w(0, 1) / (4.0 * A * n)},
              {"(4w10w01-w01^2)/(8An^2)", (4.0 * w(1, 0) * w(0, 1) - sq(w(0, 1))) / (8.0 * A * n2)},
              {"(2w11-w02)m/(4An^2)", (2.0 * w(1, 1) - w(0, 2)) * md / (4.0 * A * n2)},
              {"-(1-2lambda)(w03-3w12)/(24A^2n^2)",
               -(1.0 - 2.0 * lam) * (w(0, 3) - 3.0 * w(1, 2)) / (24.0 * A * A * n2)},
          },
          "O(n^-b)");
    }
  }
  throw InvalidInput("unknown induced model");
}

double overlap_distribution_estimate(const Parameters& p, std::int64_t y_edges, std::int64_t k) {
  if (k < 0 || k > y_edges) throw InvalidInput("overlap size k out of range 0..Y");
  const double lam = p.lambda;
  const double log_coeff = log_binomial(y_edges, k);
  const double kd = static_cast<double>(k);
  const double rest = static_cast<double>(y_edges - k);
  // 0^0 = 1 at the density boundary.
  const double log_lam = kd == 0.0 ? 0.0 : std::log(lam);
  const double log_mu = rest == 0.0 ? 0.0 : std::log1p(-lam);
  return std::exp(log_coeff + kd * log_lam + rest * log_mu);
}

LogEstimate sparse_estimate(const Parameters& p, const ForbiddenGraph& x, SparseFormula which) {
  if (p.E < 1) throw InvalidInput("sparse formulas need at least one edge");
  const double E = static_cast<double>(p.E);
  if (which == SparseFormula::Perth) {
    CompensatedSum base;
    base += log_factorial(2 * p.E) - log_factorial(p.E) - E * std::numbers::ln2;
    double s2 = 0.0;
    for (int v : p.degrees) {
      base += -log_factorial(v);
      s2 += static_cast<double>(v) * (v - 1);
    }
    double cross = 0.0;
    for (auto [j, k] : x.edges()) {
      cross += static_cast<double>(p.degrees[static_cast<std::size_t>(j)]) * p.degrees[static_cast<std::size_t>(k)];
    }
    return LogEstimate::make(base.value(),
                             {
                                 {"-sum d(d-1)/(4E)", -s2 / (4.0 * E)},
                                 {"-(sum d(d-1))^2/(16E^2)", -s2 * s2 / (16.0 * E * E)},
                                 {"-sum_X d_j d_k/(2E)", -cross / (2.0 * E)},
                             },
                             "O(Delta^2/E)");
  }
  if (p.X > p.E) throw InvalidInput("McKay81 formula needs X <= E");
  CompensatedSum base;
  for (int j = 0; j < p.n; ++j) {
    base += log_falling_factorial(p.degrees[static_cast<std::size_t>(j)], p.x[static_cast<std::size_t>(j)]);
  }
  base += -static_cast<double>(p.X) * std::numbers::ln2 - log_falling_factorial(p.E, p.X);
  return LogEstimate::make(base.value(), {}, "O(Delta X/E)");
}

LogEstimate regular_graph_expectation(int n, int d, RegularTarget target, int q) {
  if (n < 2 || d < 1 || d > n - 1 || (static_cast<std::int64_t>(n) * d) % 2 != 0) {
    throw InvalidInput("need a valid regular degree 1 <= d <= n-1 with nd even");
  }
  const double nd = n;
  const double lam = static_cast<double>(d) / (nd - 1.0);
  switch (target) {
    case RegularTarget::Matchings: {
      if (n % 2 != 0) throw InvalidInput("perfect matchings need n even");
      const double base = (nd / 2.0) * std::log(lam) + log_factorial(n) - (nd / 2.0) * std::numbers::ln2 -
                          log_factorial(n / 2);
      return LogEstimate::make(base, {{"(1-lambda)/(4lambda)", (1.0 - lam) / (4.0 * lam)}}, "O(n^-b)");
    }
    case RegularTarget::Cycles: {
      if (q < 3 || q > n) throw InvalidInput("cycle length must satisfy 3 <= q <= n");
      const double qd = q;
      const double base = qd * std::log(lam) + log_factorial(n) - std::log(2.0 * qd) - log_factorial(n - q);
      return LogEstimate::make(base,
                               {{"-(1-lambda)q(n-q)/(lambda n^2)", -(1.0 - lam) * qd * (nd - qd) / (lam * nd * nd)}},
                               "O(n^-b)");
    }
    case RegularTarget::SpanningTrees: {
      const double base = (nd - 2.0) * std::log(nd) + (nd - 1.0) * std::log(lam);
      return LogEstimate::make(base, {{"7(1-lambda)/(2lambda)", 7.0 * (1.0 - lam) / (2.0 * lam)}}, "O(n^-b)");
    }
  }
  throw InvalidInput("unknown target");
}

}  // namespace degenum
