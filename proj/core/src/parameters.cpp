#include "degenum/parameters.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <string>

namespace degenum {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

Fraction reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

double to_double(const cpp_rational& q) { return q.convert_to<double>(); }

}  // namespace

Parameters compute_parameters(const DegreeSequence& d, const ForbiddenGraph& x) {
  if (d.n() != x.n()) {
    throw InvalidInput("dimension mismatch: d has " + std::to_string(d.n()) +
                       " vertices, X has " + std::to_string(x.n()));
  }
  const int n = d.n();
  if (n < 2) throw InvalidInput("need at least two vertices");

  Parameters p;
  p.n = n;
  p.E = d.edge_count();
  p.X = x.edge_count();
  const std::int64_t nn = n;
  p.d_avg_exact = reduced(2 * p.E, nn);
  p.lambda_exact = reduced(2 * p.E, nn * (nn - 1));
  p.d_avg = p.d_avg_exact.value();
  p.lambda = p.lambda_exact.value();
  const double lam = p.lambda;
  p.A = 0.5 * lam * (1.0 - lam);
  p.A3 = lam * (1.0 - lam) * (1.0 - 2.0 * lam) / 6.0;
  p.A4 = lam * (1.0 - lam) * (1.0 - 6.0 * lam + 6.0 * lam * lam) / 24.0;

  p.degrees.assign(d.degrees().begin(), d.degrees().end());
  p.x.assign(x.row_sums().begin(), x.row_sums().end());

  // delta_j * n(n-1) = d_j n(n-1) - 2E(n-1) + 2E x_j
  p.delta_den = nn * (nn - 1);
  p.delta_num.resize(static_cast<std::size_t>(n));
  p.delta.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    p.delta_num[uj] = p.degrees[uj] * p.delta_den - 2 * p.E * (nn - 1) + 2 * p.E * p.x[uj];
    p.delta[uj] = static_cast<double>(p.delta_num[uj]) / static_cast<double>(p.delta_den);
  }

  // Deviations d_j - d scaled by n.
  std::vector<cpp_int> dev(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) dev[static_cast<std::size_t>(j)] = cpp_int(p.degrees[static_cast<std::size_t>(j)]) * nn - 2 * p.E;

  const cpp_int den(p.delta_den);
  std::array<cpp_int, 5> r_sum;
  cpp_int c11, c12, c21, r_dev, x2, x3;
  for (int j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const cpp_int dl(p.delta_num[uj]);
    const cpp_int xj(p.x[uj]);
    cpp_int power = 1;
    for (int l = 1; l <= 4; ++l) {
      power *= dl;
      r_sum[static_cast<std::size_t>(l)] += power;
    }
    c11 += dl * xj;
    c12 += dl * xj * xj;
    c21 += dl * dl * xj;
    r_dev += dev[uj] * dev[uj];
    x2 += xj * xj;
    x3 += xj * xj * xj;
  }
  p.Rl[0] = n;
  cpp_int den_power = 1;
  for (int l = 1; l <= 4; ++l) {
    den_power *= den;
    p.Rl[static_cast<std::size_t>(l)] = to_double(cpp_rational(r_sum[static_cast<std::size_t>(l)], den_power));
  }
  p.C11 = to_double(cpp_rational(c11, den));
  p.C12 = to_double(cpp_rational(c12, den));
  p.C21 = to_double(cpp_rational(c21, den * den));
  p.R = to_double(cpp_rational(r_dev, cpp_int(nn) * nn));
  p.X2 = x2.convert_to<double>();
  p.X3 = x3.convert_to<double>();

  cpp_int d_sum, h_sum, l_sum, k_sum;
  std::vector<cpp_int> b_num(static_cast<std::size_t>(n));
  for (auto [j, k] : x.edges()) {
    const auto uj = static_cast<std::size_t>(j);
    const auto uk = static_cast<std::size_t>(k);
    const cpp_int dj(p.delta_num[uj]);
    const cpp_int dk(p.delta_num[uk]);
    d_sum += dj * dk;
    h_sum += cpp_int(p.x[uj]) * p.x[uk];
    const cpp_int lj = dj - cpp_int(p.x[uj]) * den;
    const cpp_int lk = dk - cpp_int(p.x[uk]) * den;
    l_sum += lj * lk;
    k_sum += dev[uj] * dev[uk];
    b_num[uj] += dk;
    b_num[uk] += dj;
  }
  p.D = to_double(cpp_rational(d_sum, den * den));
  p.H = h_sum.convert_to<double>();
  p.L = to_double(cpp_rational(l_sum, den * den));
  p.K = to_double(cpp_rational(k_sum, cpp_int(nn) * nn));
  p.B.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) p.B[static_cast<std::size_t>(j)] = to_double(cpp_rational(b_num[static_cast<std::size_t>(j)], den));

  p.d_max = d.max_degree();
  p.x_max = x.max_row_sum();
  p.Delta_sparse = static_cast<double>(p.d_max) * static_cast<double>(p.d_max + p.x_max);
  return p;
}

InducedSpec induced_spec(const Parameters& p, int m) {
  if (m < 0 || m > p.n) throw InvalidInput("induced order m must lie in [0, n]");
  for (int j = m; j < p.n; ++j) {
    if (p.x[static_cast<std::size_t>(j)] != 0) {
      throw InvalidInput("vertex " + std::to_string(j + 1) + " lies outside 1.." +
                         std::to_string(m) + " but has an X-edge");
    }
  }
  InducedSpec spec;
  spec.m = m;
  const double shift = p.lambda * static_cast<double>(m - 1);
  for (int j = 0; j < m; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const double u = p.degrees[uj] - p.d_avg;
    const double v = p.x[uj] - shift;
    double uk = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      double vl = 1.0;
      for (std::size_t l = 0; l < 4; ++l) {
        spec.omega[k][l] += uk * vl;
        vl *= v;
      }
      uk *= u;
    }
  }
  return spec;
}

InducedSpec induced_spec(const DegreeSequence& d, const ForbiddenGraph& x, int m) {
  return induced_spec(compute_parameters(d, x), m);
}

}  // namespace degenum
