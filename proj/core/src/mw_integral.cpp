#include "degenum/mw_integral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "degenum/numeric.hpp"

namespace degenum {

namespace {

std::size_t at2(int N, int j, int k) {
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(N) + static_cast<std::size_t>(k);
}
std::size_t at3(int N, int j, int k, int l) { return at2(N, j, k) * static_cast<std::size_t>(N) + static_cast<std::size_t>(l); }
std::size_t at4(int N, int j, int k, int l, int m) {
  return at3(N, j, k, l) * static_cast<std::size_t>(N) + static_cast<std::size_t>(m);
}

void check_size(const std::vector<cplx>& v, std::size_t expected, const char* name) {
  if (!v.empty() && v.size() != expected) {
    throw InvalidInput(std::string("coefficient table ") + name + " has size " + std::to_string(v.size()) +
                       ", expected " + std::to_string(expected));
  }
}

cplx get1(const std::vector<cplx>& v, int j) { return v.empty() ? cplx{} : v[static_cast<std::size_t>(j)]; }

struct ThetaSums {
  cplx sum_a, sum_a2, sum_b2, sum_bc, sum_cc, sum_e, sum_f, sum_j2, sum_bj, sum_cj;
};

template <typename Proj>
ThetaSums theta_sums(const CoefficientSet& c, Proj proj) {
  const int N = c.N;
  ThetaSums s{};
  for (int j = 0; j < N; ++j) {
    const cplx a = proj(get1(c.a, j));
    const cplx b = proj(get1(c.B, j));
    const cplx e = proj(get1(c.E, j));
    const cplx jj = proj(get1(c.J, j));
    s.sum_a += a;
    s.sum_a2 += a * a;
    s.sum_b2 += b * b;
    s.sum_e += e;
    s.sum_j2 += jj * jj;
    s.sum_bj += b * jj;
    if (!c.C.empty()) {
      cplx row{};
      cplx row_sq{};
      for (int k = 0; k < N; ++k) {
        if (k == j) continue;
        const cplx cjk = proj(c.C[at2(N, j, k)]);
        row += cjk;
        row_sq += cjk * cjk;
        s.sum_bc += b * cjk;
        s.sum_cj += cjk * proj(get1(c.J, k));
      }
      s.sum_cc += row * row - row_sq;
    }
    if (!c.F.empty()) {
      for (int k = 0; k < N; ++k)
        if (k != j) s.sum_f += proj(c.F[at2(N, j, k)]);
    }
  }
  return s;
}

}  // namespace

CoefficientSet CoefficientSet::zeros(int N, double A, double eps_hat) {
  CoefficientSet c;
  c.N = N;
  c.A = A;
  c.eps_hat = eps_hat;
  return c;
}

void CoefficientSet::validate() const {
  if (N < 1) throw InvalidInput("N must be positive");
  if (!(A > 0.0)) throw InvalidInput("A must be positive");
  const auto n1 = static_cast<std::size_t>(N);
  check_size(J, n1, "J");
  check_size(a, n1, "a");
  check_size(B, n1, "B");
  check_size(E, n1, "E");
  check_size(C, n1 * n1, "C");
  check_size(F, n1 * n1, "F");
  check_size(G, n1 * n1, "G");
  check_size(D, n1 * n1 * n1, "D");
  check_size(H, n1 * n1 * n1, "H");
  check_size(I, n1 * n1 * n1 * n1, "I");
}

double CoefficientSet::box_half_width() const { return std::pow(static_cast<double>(N), -0.5 + eps_hat); }

cplx CoefficientSet::log_integrand(const std::vector<double>& z) const {
  const double Nd = N;
  const double rootN = std::sqrt(Nd);
  cplx s{};
  double sq_sum = 0.0;
  for (int j = 0; j < N; ++j) {
    const double zj = z[static_cast<std::size_t>(j)];
    const double z2 = zj * zj;
    sq_sum += z2;
    s += get1(J, j) * zj + rootN * get1(a, j) * z2 + Nd * get1(B, j) * z2 * zj + Nd * get1(E, j) * z2 * z2;
  }
  s += -A * Nd * sq_sum;
  if (!C.empty() || !F.empty() || !G.empty()) {
    for (int j = 0; j < N; ++j) {
      const double zj = z[static_cast<std::size_t>(j)];
      for (int k = 0; k < N; ++k) {
        if (k == j) continue;
        const double zk = z[static_cast<std::size_t>(k)];
        const auto i = at2(N, j, k);
        if (!C.empty()) s += C[i] * zj * zk * zk;
        if (!F.empty()) s += F[i] * zj * zj * zk * zk;
        if (!G.empty()) s += rootN * G[i] * zj * zk * zk * zk;
      }
    }
  }
  if (!D.empty() || !H.empty()) {
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        if (k == j) continue;
        for (int l = 0; l < N; ++l) {
          if (l == j || l == k) continue;
          const double p = z[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(l)];
          const auto i = at3(N, j, k, l);
          if (!D.empty()) s += D[i] * p / Nd;
          if (!H.empty()) s += H[i] * p * z[static_cast<std::size_t>(l)] / rootN;
        }
      }
  }
  if (!I.empty()) {
    const double scale = 1.0 / (Nd * rootN);
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        if (k == j) continue;
        for (int l = 0; l < N; ++l) {
          if (l == j || l == k) continue;
          for (int m = 0; m < N; ++m) {
            if (m == j || m == k || m == l) continue;
            s += I[at4(N, j, k, l, m)] * z[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(k)] *
                 z[static_cast<std::size_t>(l)] * z[static_cast<std::size_t>(m)] * scale;
          }
        }
      }
  }
  return s;
}

CoefficientSet parse_coefficients(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("coefficient document: ") + e.what());
  }
  CoefficientSet c;
  try {
    c.N = doc.at("N").get<int>();
    c.A = doc.at("A").get<double>();
    c.eps_hat = doc.value("epsHat", 0.25);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("coefficient document: ") + e.what());
  }
  auto scalar = [](const nlohmann::json& v) -> cplx {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      return {v[0].get<double>(), v[1].get<double>()};
    }
    throw InvalidInput("complex entries must be numbers or [re, im] pairs");
  };
  // A table of rank r is either flat (N^r scalars) or nested r deep.
  auto table = [&](const char* name, std::vector<cplx>& out, int rank) {
    if (!doc.contains(name)) return;
    const auto& v = doc.at(name);
    if (!v.is_array()) throw InvalidInput(std::string("table ") + name + " must be an array");
    std::size_t flat = 1;
    for (int r = 0; r < rank; ++r) flat *= static_cast<std::size_t>(std::max(c.N, 0));
    const bool nested = rank > 1 && v.size() == static_cast<std::size_t>(c.N) && v.size() != flat;
    const bool nested1 = rank > 1 && c.N == 1 && !v.empty() && v[0].is_array() && v[0].size() == 1;
    if (!nested && !nested1) {
      for (const auto& e : v) out.push_back(scalar(e));
      return;
    }
    auto walk = [&](const nlohmann::json& node, int depth, auto&& self) -> void {
      if (depth == rank) {
        out.push_back(scalar(node));
        return;
      }
      if (!node.is_array() || node.size() != static_cast<std::size_t>(c.N)) {
        throw InvalidInput(std::string("table ") + name + " has a malformed row");
      }
      for (const auto& e : node) self(e, depth + 1, self);
    };
    walk(v, 0, walk);
  };
  table("J", c.J, 1);
  table("a", c.a, 1);
  table("B", c.B, 1);
  table("E", c.E, 1);
  table("C", c.C, 2);
  table("F", c.F, 2);
  table("G", c.G, 2);
  table("D", c.D, 3);
  table("H", c.H, 3);
  table("I", c.I, 4);
  c.validate();
  return c;
}

std::vector<std::pair<std::string, cplx>> theta1_terms(const CoefficientSet& c) {
  c.validate();
  const double A = c.A;
  const double N = c.N;
  const ThetaSums s = theta_sums(c, [](cplx v) { return v; });
  return {
      {"sum a/(2A N^(1/2))", s.sum_a / (2.0 * A * std::sqrt(N))},
      {"sum a^2/(4A^2N)", s.sum_a2 / (4.0 * A * A * N)},
      {"15 sum B^2/(16A^3N)", 15.0 * s.sum_b2 / (16.0 * A * A * A * N)},
      {"3 sum' B_j C_jk/(8A^3N^2)", 3.0 * s.sum_bc / (8.0 * A * A * A * N * N)},
      {"sum' C_jk C_jl/(16A^3N^3)", s.sum_cc / (16.0 * A * A * A * N * N * N)},
      {"3 sum E/(4A^2N)", 3.0 * s.sum_e / (4.0 * A * A * N)},
      {"sum' F/(4A^2N^2)", s.sum_f / (4.0 * A * A * N * N)},
      {"sum J^2/(4AN)", s.sum_j2 / (4.0 * A * N)},
      {"3 sum B J/(4A^2N)", 3.0 * s.sum_bj / (4.0 * A * A * N)},
      {"sum' C_jk J_k/(4A^2N^2)", s.sum_cj / (4.0 * A * A * N * N)},
  };
}

cplx theta1(const CoefficientSet& c) {
  cplx total{};
  for (const auto& [name, value] : theta1_terms(c)) total += value;
  return total;
}

double z_factor(const CoefficientSet& c) {
  c.validate();
  const double A = c.A;
  const double N = c.N;
  const ThetaSums s = theta_sums(c, [](cplx v) { return cplx{v.imag(), 0.0}; });
  const double arg = (s.sum_a2 / (4.0 * A * A * N) + 15.0 * s.sum_b2 / (16.0 * A * A * A * N) +
                      3.0 * s.sum_bc / (8.0 * A * A * A * N * N) + s.sum_cc / (16.0 * A * A * A * N * N * N) +
                      s.sum_j2 / (4.0 * A * N) + 3.0 * s.sum_bj / (4.0 * A * A * N) + s.sum_cj / (4.0 * A * A * N * N))
                         .real();
  return std::exp(arg);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

BoxIntegralResult mc_box_integral(const CoefficientSet& c, const BoxIntegralConfig& config) {
  c.validate();
  if (config.samples < 1) throw InvalidInput("need at least one sample");
  if (config.streams < 1) throw InvalidInput("need at least one stream");
  const double Nd = c.N;
  const double AN = c.A * Nd;
  const double half = c.box_half_width();
  const double box_mass = std::pow(std::erf(half * std::sqrt(AN)), Nd);
  if (!(box_mass >= config.min_box_mass)) {
    throw DegenerateProposal("box captures Gaussian mass " + std::to_string(box_mass) +
                             " < " + std::to_string(config.min_box_mass) + "; increase A or eps_hat");
  }
  const double sigma = 1.0 / std::sqrt(2.0 * AN);

  struct StreamTotals {
    CompensatedSum re, im, re2, im2;
    std::int64_t accepted = 0;
    std::int64_t drawn = 0;
  };
  const int streams = config.streams;
  std::vector<StreamTotals> totals(static_cast<std::size_t>(streams));
  const std::int64_t base = config.samples / streams;
  const std::int64_t extra = config.samples % streams;

  auto run_stream = [&](int s) {
    std::mt19937_64 rng(splitmix64(config.seed + static_cast<std::uint64_t>(s)));
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> z(static_cast<std::size_t>(c.N));
    StreamTotals& t = totals[static_cast<std::size_t>(s)];
    const std::int64_t count = base + (s < extra ? 1 : 0);
    for (std::int64_t i = 0; i < count; ++i) {
      bool inside = true;
      double sq_sum = 0.0;
      for (auto& v : z) {
        v = normal(rng);
        sq_sum += v * v;
        if (std::abs(v) > half) inside = false;
      }
      ++t.drawn;
      if (!inside) continue;
      ++t.accepted;
      const cplx w = std::exp(c.log_integrand(z) + AN * sq_sum);
      t.re += w.real();
      t.im += w.imag();
      t.re2 += w.real() * w.real();
      t.im2 += w.imag() * w.imag();
    }
  };

  const int threads = std::max(1, std::min(config.threads, streams));
  if (threads == 1) {
    for (int s = 0; s < streams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int s = t; s < streams; s += threads) run_stream(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  CompensatedSum re, im, re2, im2;
  std::int64_t accepted = 0;
  for (const auto& t : totals) {
    re += t.re.value();
    im += t.im.value();
    re2 += t.re2.value();
    im2 += t.im2.value();
    accepted += t.accepted;
  }
  const auto total = static_cast<double>(config.samples);
  const double mean_re = re.value() / total;
  const double mean_im = im.value() / total;
  const double var_re = std::max(0.0, re2.value() / total - mean_re * mean_re);
  const double var_im = std::max(0.0, im2.value() / total - mean_im * mean_im);

  BoxIntegralResult out;
  out.log_gaussian = 0.5 * Nd * std::log(std::numbers::pi / AN);
  const double gauss = std::exp(out.log_gaussian);
  out.ratio = {mean_re, mean_im};
  out.ratio_stderr_re = std::sqrt(var_re / total);
  out.ratio_stderr_im = std::sqrt(var_im / total);
  out.mean = gauss * out.ratio;
  out.stderr_re = gauss * out.ratio_stderr_re;
  out.stderr_im = gauss * out.ratio_stderr_im;
  out.box_mass = box_mass;
  out.acceptance = static_cast<double>(accepted) / total;
  out.samples = config.samples;
  out.seed = config.seed;
  out.streams = streams;
  return out;
}

}  // namespace degenum
