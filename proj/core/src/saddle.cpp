#include "degenum/saddle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "degenum/numeric.hpp"

namespace degenum {

namespace {

std::size_t idx(int n, int j, int k) {
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
}

std::vector<double> radii_from_a(std::span<const double> a, double r) {
  const double r2 = r * r;
  std::vector<double> radii(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double denom = 1.0 - r2 * a[j];
    if (!(denom > 0.0) || !(1.0 + a[j] > 0.0)) {
      throw SaddleError("pole in the radius map at vertex " + std::to_string(j + 1));
    }
    radii[j] = r * (1.0 + a[j]) / denom;
  }
  return radii;
}

/// Fills lambda_jk and the residual of sum_{k in Xbar(j)} lambda_jk = target_j.
void fill_lambda(SaddlePoint& sp, const ForbiddenGraph& x, std::span<const double> target) {
  const int n = sp.n;
  sp.lambda_jk.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double rr = sp.radii[static_cast<std::size_t>(j)] * sp.radii[static_cast<std::size_t>(k)];
      const double l = rr / (1.0 + rr);
      sp.lambda_jk[idx(n, j, k)] = l;
      sp.lambda_jk[idx(n, k, j)] = l;
    }
  }
  sp.residual.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    CompensatedSum s;
    for (int k = 0; k < n; ++k)
      if (k != j && !x.has_edge(j, k)) s += sp.lambda_jk[idx(n, j, k)];
    s += -target[static_cast<std::size_t>(j)];
    sp.residual[static_cast<std::size_t>(j)] = s.value();
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

SaddlePoint make_from_a(const Parameters& p, const ForbiddenGraph& x, std::vector<double> a,
                        std::span<const double> target) {
  SaddlePoint sp;
  sp.n = p.n;
  sp.lambda = p.lambda;
  sp.r = std::sqrt(p.lambda / (1.0 - p.lambda));
  sp.radii = radii_from_a(a, sp.r);
  sp.a = std::move(a);
  fill_lambda(sp, x, target);
  return sp;
}

std::vector<double> a_from_radii(std::span<const double> radii, double r) {
  std::vector<double> a(radii.size());
  for (std::size_t j = 0; j < radii.size(); ++j) a[j] = (radii[j] - r) / (r * (1.0 + r * radii[j]));
  return a;
}

/// Damped Newton on sum_{k in Xbar(j)} lambda_jk = target_j in u_j = ln r_j.
SaddlePoint newton_solve(const Parameters& p, const ForbiddenGraph& x, std::span<const double> target,
                         std::vector<double> radii, const SaddleConfig& config) {
  const int n = p.n;
  SaddlePoint sp;
  sp.n = n;
  sp.lambda = p.lambda;
  sp.r = std::sqrt(p.lambda / (1.0 - p.lambda));
  sp.method = SaddleMethod::Newton;
  sp.radii = std::move(radii);
  fill_lambda(sp, x, target);
  double norm = max_abs(sp.residual);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * n * std::max(1.0, static_cast<double>(p.d_max));

  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd rhs(n);
  int it = 0;
  for (; it < 100 && norm >= config.tol; ++it) {
    jac.setZero();
    for (int j = 0; j < n; ++j) {
      rhs(j) = -sp.residual[static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        if (k == j || x.has_edge(j, k)) continue;
        const double l = sp.lambda_at(j, k);
        const double w = l * (1.0 - l);
        jac(j, k) = w;
        jac(j, j) += w;
      }
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(rhs);
    if (!step.allFinite()) break;

    double t = 1.0;
    bool improved = false;
    SaddlePoint trial = sp;
    while (t > 1e-10) {
      for (int j = 0; j < n; ++j) {
        trial.radii[static_cast<std::size_t>(j)] =
            sp.radii[static_cast<std::size_t>(j)] * std::exp(t * step(j));
      }
      fill_lambda(trial, x, target);
      const double trial_norm = max_abs(trial.residual);
      if (std::isfinite(trial_norm) && trial_norm < (1.0 - 1e-4 * t) * norm) {
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;
    sp = std::move(trial);
    norm = max_abs(sp.residual);
  }
  sp.iterations = it;
  if (norm >= config.tol && norm > floor) {
    throw SaddleError("Newton iteration stalled with degree residual " + std::to_string(norm));
  }
  sp.a = a_from_radii(sp.radii, sp.r);
  return sp;
}

void check_interior(const DegreeSequence& d, const ForbiddenGraph& x) {
  const int n = d.n();
  if (n < 3) throw InvalidInput("saddle point requires n >= 3");
  for (int j = 0; j < n; ++j) {
    if (!(d[j] > 0 && d[j] < n - 1 - x.row_sum(j))) {
      throw InvalidInput("saddle point requires 0 < d_j < n-1-x_j; fails at vertex " +
                         std::to_string(j + 1));
    }
  }
}

}  // namespace

double SaddlePoint::max_residual() const noexcept { return max_abs(residual); }

double z_jk(double a_j, double a_k, double r_squared) noexcept {
  return a_j * a_k * (1.0 - r_squared - r_squared * a_j - r_squared * a_k) /
         (1.0 + r_squared * a_j * a_k);
}

std::vector<double> contraction_step(const Parameters& p, const ForbiddenGraph& x,
                                     std::span<const double> a) {
  const int n = p.n;
  const double nd = n;
  const double r2 = p.lambda / (1.0 - p.lambda);
  std::vector<double> z_row(static_cast<std::size_t>(n), 0.0);
  CompensatedSum z_total;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (x.has_edge(j, k)) continue;
      const double z = z_jk(a[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(k)], r2);
      z_row[static_cast<std::size_t>(j)] += z;
      z_row[static_cast<std::size_t>(k)] += z;
      z_total += z;
    }
  }
  CompensatedSum weighted;
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    weighted += a[uk] * (1.0 + p.x[uk]);
  }
  const double common = -static_cast<double>(p.X) / (nd * nd) - weighted.value() / (nd * nd) +
                        z_total.value() / (nd * nd);
  std::vector<double> next(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    double x_sum = 0.0;
    for (int k : x.neighbors(j)) x_sum += a[static_cast<std::size_t>(k)];
    next[uj] = p.delta[uj] / (p.lambda * nd) + (2.0 * a[uj] + a[uj] * p.x[uj]) / nd + common +
               x_sum / nd - z_row[uj] / nd;
  }
  return next;
}

SaddlePoint solve_saddle(const DegreeSequence& d, const ForbiddenGraph& x, const SaddleConfig& config) {
  check_interior(d, x);
  const Parameters p = compute_parameters(d, x);
  std::vector<double> target(d.degrees().begin(), d.degrees().end());
  std::vector<double> a(static_cast<std::size_t>(p.n), 0.0);

  if (config.mode == SaddleMode::FixedIterations) {
    for (int it = 0; it < config.fixed_iterations; ++it) {
      a = contraction_step(p, x, a);
      radii_from_a(a, std::sqrt(p.lambda / (1.0 - p.lambda)));
    }
    SaddlePoint sp = make_from_a(p, x, std::move(a), target);
    sp.iterations = config.fixed_iterations;
    return sp;
  }

  SaddlePoint best = make_from_a(p, x, a, target);
  double norm = best.max_residual();
  int growth = 0;
  int it = 0;
  bool failed = false;
  while (norm >= config.tol && it < config.max_iter) {
    ++it;
    try {
      a = contraction_step(p, x, a);
      SaddlePoint sp = make_from_a(p, x, a, target);
      const double next_norm = sp.max_residual();
      if (!std::isfinite(next_norm)) {
        failed = true;
        break;
      }
      growth = next_norm > norm ? growth + 1 : 0;
      if (next_norm < best.max_residual()) {
        best = std::move(sp);
        best.iterations = it;
      }
      norm = next_norm;
      if (growth >= 3) {
        failed = true;
        break;
      }
    } catch (const SaddleError&) {
      if (!config.newton_fallback) throw;
      failed = true;
      break;
    }
  }
  if (best.max_residual() < config.tol) return best;
  if (!config.newton_fallback) {
    throw SaddleError(failed ? "contraction iteration diverged" : "contraction iteration did not converge");
  }
  SaddlePoint sp = newton_solve(p, x, target, best.radii, config);
  sp.iterations += best.iterations;
  return sp;
}

SaddlePoint saddle_from_radii(const DegreeSequence& d, const ForbiddenGraph& x, std::vector<double> radii) {
  if (d.n() != x.n() || static_cast<int>(radii.size()) != d.n()) {
    throw InvalidInput("dimension mismatch");
  }
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("radii must be positive and finite");
  const Parameters p = compute_parameters(d, x);
  SaddlePoint sp;
  sp.n = p.n;
  sp.lambda = p.lambda;
  sp.r = (p.lambda > 0.0 && p.lambda < 1.0) ? std::sqrt(p.lambda / (1.0 - p.lambda)) : 0.0;
  sp.method = SaddleMethod::GivenRadii;
  sp.radii = std::move(radii);
  std::vector<double> target(d.degrees().begin(), d.degrees().end());
  fill_lambda(sp, x, target);
  if (sp.r > 0.0) sp.a = a_from_radii(sp.radii, sp.r);
  return sp;
}

AbgCoefficients abg_coefficients(const SaddlePoint& sp) {
  const int n = sp.n;
  const double lam = sp.lambda;
  const double A = 0.5 * lam * (1.0 - lam);
  const double A3 = lam * (1.0 - lam) * (1.0 - 2.0 * lam) / 6.0;
  const double A4 = lam * (1.0 - lam) * (1.0 - 6.0 * lam + 6.0 * lam * lam) / 24.0;
  AbgCoefficients c;
  c.n = n;
  const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  c.alpha.assign(size, 0.0);
  c.beta.assign(size, 0.0);
  c.gamma.assign(size, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const double l = sp.lambda_at(j, k);
      const auto i = c.index(j, k);
      c.alpha[i] = 0.5 * l * (1.0 - l) - A;
      c.beta[i] = l * (1.0 - l) * (1.0 - 2.0 * l) / 6.0 - A3;
      c.gamma[i] = l * (1.0 - l) * (1.0 - 6.0 * l + 6.0 * l * l) / 24.0 - A4;
    }
  }
  return c;
}

double log_prefactor(const SaddlePoint& sp, const DegreeSequence& d, const ForbiddenGraph& x) {
  const int n = sp.n;
  CompensatedSum s;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (x.has_edge(j, k)) continue;
      s += std::log1p(sp.radii[static_cast<std::size_t>(j)] * sp.radii[static_cast<std::size_t>(k)]);
    }
  }
  s += -n * std::log(2.0 * std::numbers::pi);
  for (int j = 0; j < n; ++j) s += -d[j] * std::log(sp.radii[static_cast<std::size_t>(j)]);
  return s.value();
}

ModulusResult integrand_modulus(const SaddlePoint& sp, std::span<const double> theta,
                                const ForbiddenGraph& x) {
  if (static_cast<int>(theta.size()) != sp.n) throw InvalidInput("theta has the wrong length");
  CompensatedSum log_mod;
  CompensatedSum log_bound;
  for (int j = 0; j < sp.n; ++j) {
    for (int k = j + 1; k < sp.n; ++k) {
      if (x.has_edge(j, k)) continue;
      const double l = sp.lambda_at(j, k);
      const double q = 0.5 * l * (1.0 - l);
      const double z = theta[static_cast<std::size_t>(j)] + theta[static_cast<std::size_t>(k)];
      const double inner = std::max(0.0, 1.0 - 4.0 * q * (1.0 - std::cos(z)));
      log_mod += 0.5 * std::log(inner);
      log_bound += -q * z * z + q * z * z * z * z / 12.0;
    }
  }
  ModulusResult out;
  out.log_modulus = log_mod.value();
  out.log_bound = log_bound.value();
  out.modulus = std::exp(out.log_modulus);
  out.bound = std::exp(out.log_bound);
  return out;
}

QuadratureResult integral_quadrature(const SaddlePoint& sp, const DegreeSequence& d,
                                     const ForbiddenGraph& x, const QuadratureConfig& config) {
  const int n = sp.n;
  if (n > config.max_n) {
    throw InvalidInput("angular quadrature limited to n <= " + std::to_string(config.max_n));
  }
  struct Pair {
    int j;
    int k;
    double l;
  };
  std::vector<Pair> pairs;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (!x.has_edge(j, k)) pairs.push_back({j, k, sp.lambda_at(j, k)});

  auto evaluate = [&](int grid, double& abs_out) {
    const double two_pi = 2.0 * std::numbers::pi;
    // theta = -pi + 2 pi m / grid; theta_j + theta_k = 2 pi (m_j + m_k) / grid mod 2 pi.
    std::vector<std::complex<double>> root(static_cast<std::size_t>(grid));
    for (int s = 0; s < grid; ++s) root[static_cast<std::size_t>(s)] = std::polar(1.0, two_pi * s / grid);
    std::vector<std::vector<std::complex<double>>> pair_table(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      pair_table[e].resize(static_cast<std::size_t>(grid));
      for (int s = 0; s < grid; ++s) {
        pair_table[e][static_cast<std::size_t>(s)] = 1.0 + pairs[e].l * (root[static_cast<std::size_t>(s)] - 1.0);
      }
    }
    std::vector<std::vector<std::complex<double>>> degree_table(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      degree_table[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(grid));
      for (int m = 0; m < grid; ++m) {
        const double theta = -std::numbers::pi + two_pi * m / grid;
        degree_table[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = std::polar(1.0, -d[j] * theta);
      }
    }
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    ComplexCompensatedSum total;
    CompensatedSum abs_total;
    while (true) {
      std::complex<double> f = 1.0;
      for (int j = 0; j < n; ++j) f *= degree_table[static_cast<std::size_t>(j)][static_cast<std::size_t>(m[static_cast<std::size_t>(j)])];
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        const int s = (m[static_cast<std::size_t>(pairs[e].j)] + m[static_cast<std::size_t>(pairs[e].k)]) % grid;
        f *= pair_table[e][static_cast<std::size_t>(s)];
      }
      total += f;
      abs_total += std::abs(f);
      int j = 0;
      while (j < n && ++m[static_cast<std::size_t>(j)] == grid) {
        m[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == n) break;
    }
    const double cell = std::pow(two_pi / grid, n);
    abs_out = abs_total.value() * cell;
    return total.value() * cell;
  };

  auto points = [n](int grid) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) p *= grid;
    return p;
  };

  int grid = std::max(2, config.initial_grid);
  QuadratureResult result;
  result.value = evaluate(grid, result.abs_integral);
  result.grid = grid;
  while (true) {
    const int next = grid * 2;
    if (points(next) > static_cast<double>(config.max_points)) {
      throw SaddleError("angular quadrature did not converge within the point budget");
    }
    double abs_next = 0.0;
    const auto value = evaluate(next, abs_next);
    const double change = std::abs(value - result.value);
    result.value = value;
    result.abs_integral = abs_next;
    result.grid = next;
    result.change = change;
    grid = next;
    if (change <= config.rel_tol * std::abs(value) || change <= 1e-13 * abs_next) break;
  }
  return result;
}

ContourCheck verify_start(const DegreeSequence& d, const ForbiddenGraph& x, const QuadratureConfig& config) {
  ContourCheck check;
  check.exact = exact_count(d, x).value;
  SaddlePoint sp;
  bool have = false;
  try {
    sp = solve_saddle(d, x);
    have = true;
  } catch (const InvalidInput&) {
  } catch (const SaddleError&) {
  }
  if (!have) sp = saddle_from_radii(d, x, std::vector<double>(static_cast<std::size_t>(d.n()), 1.0));
  check.saddle_radii = have;
  check.log_prefactor = log_prefactor(sp, d, x);
  const QuadratureResult q = integral_quadrature(sp, d, x, config);
  check.integral = q.value;
  check.grid = q.grid;
  check.product = std::exp(check.log_prefactor) * q.value.real();
  const double g = check.exact.convert_to<double>();
  check.rel_error = g > 0.0 ? std::abs(check.product - g) / g : std::abs(check.product);
  check.imag_ratio = std::abs(q.value) > 0.0 ? std::abs(q.value.imag()) / std::abs(q.value) : 0.0;
  return check;
}

}  // namespace degenum
