// degenum: exact and asymptotic counts of graphs with given degrees.
//
// Exit status: 0 success, 1 failed validation or numerical failure, 2 bad input.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "degenum/asymptotics.hpp"
#include "degenum/exact_count.hpp"
#include "degenum/io.hpp"
#include "degenum/mw_integral.hpp"
#include "degenum/parameters.hpp"
#include "degenum/saddle.hpp"
#include "degenum/sampler.hpp"
#include "degenum/validation.hpp"

using json = nlohmann::ordered_json;
using namespace degenum;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr int kSchemaVersion = 1;

// Bad input: reported on stderr, exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t env_seed() {
  if (const char* s = std::getenv("DEGENUM_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError(std::string("DEGENUM_SEED is not an unsigned integer: ") + s);
    }
  }
  return kDefaultSeed;
}

int env_threads() {
  if (const char* s = std::getenv("DEGENUM_THREADS")) {
    try {
      const int t = std::stoi(s);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("DEGENUM_THREADS must be a positive integer: ") + s);
  }
  return 1;
}

// Non-finite values have no JSON spelling; they become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(std::complex<double> z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

json header(const std::string& command) {
  return json{{"schema", "degenum." + command}, {"version", kSchemaVersion}};
}

json estimate_json(const LogEstimate& e) {
  json terms = json::array();
  for (const auto& t : e.terms) terms.push_back({{"name", t.name}, {"value", num(t.value)}});
  return json{{"scale", "log"},
              {"logValue", num(e.log_value)},
              {"baseLog", num(e.base_log)},
              {"correction", num(e.correction)},
              {"errorOrder", e.error_order},
              {"terms", terms}};
}

json validity_json(const ValidityReport& v) {
  json out = json::array();
  for (const auto& f : v.flags) {
    out.push_back({{"hypothesis", f.hypothesis}, {"measured", num(f.measured)}, {"threshold", num(f.threshold)}});
  }
  return out;
}

struct Inputs {
  std::string degrees;
  std::string forbidden;
  std::string format = "auto";
};

DegreeSequence load_degrees(const Inputs& in) {
  if (in.degrees.empty()) throw InputError("--degrees is required");
  return io::read_degrees(in.degrees);
}

ForbiddenGraph load_forbidden(const Inputs& in, int n) {
  if (in.forbidden.empty()) return ForbiddenGraph(n, {});
  return io::read_edge_list(in.forbidden, n);
}

// Flattens a document into "path,value" rows.
void flatten(const json& v, const std::string& path, std::ostream& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
}

void emit(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "json" || format == "auto") {
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    // Estimates flatten to their terms only.
    if (doc.contains("estimate") && doc["estimate"].contains("terms")) {
      out << "name,value\n";
      for (const auto& t : doc["estimate"]["terms"]) out << '"' << t["name"].get<std::string>() << "\"," << t["value"].dump() << '\n';
    } else {
      out << "field,value\n";
      flatten(doc, "", out);
    }
  } else {
    std::ostringstream rows;
    flatten(doc, "", rows);
    std::string line;
    std::istringstream in(rows.str());
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      out << line.substr(0, comma) << ": " << line.substr(comma + 1) << '\n';
    }
  }
}

// count ---------------------------------------------------------------------

struct CountOpts {
  Inputs in;
  bool timing = false;
  int max_n = 0;
};

int run_count(const CountOpts& o) {
  const DegreeSequence d = load_degrees(o.in);
  const ForbiddenGraph x = load_forbidden(o.in, d.n());
  ExactCountConfig cfg;
  if (o.max_n > 0) cfg.max_n_empty = cfg.max_n_forbidden = o.max_n;
  const auto t0 = std::chrono::steady_clock::now();
  const ExactCount c = exact_count(d, x, cfg);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.in.format == "auto" || o.in.format == "text") {
    std::cout << c.value << '\n';
    if (o.timing) std::cerr << "elapsed " << elapsed << " s\n";
    return 0;
  }
  json doc = header("count");
  doc["n"] = d.n();
  doc["count"] = c.value.str();  // decimal string: may exceed 64 bits
  doc["scale"] = "linear";
  if (o.timing) doc["elapsedSeconds"] = elapsed;
  emit(doc, o.in.format, std::cout);
  return 0;
}

// estimate ------------------------------------------------------------------

struct EstimateOpts {
  Inputs in;
  std::string formula = "dense";
  int m = 0;
  int k = -1;
  int q = 3;
  double adv_a = 0.25;
  double adv_b = 0.2;
};

int run_estimate(const EstimateOpts& o) {
  const DegreeSequence d = load_degrees(o.in);
  const ForbiddenGraph x = load_forbidden(o.in, d.n());
  const Parameters p = compute_parameters(d, x);
  json doc = header("estimate");
  doc["formula"] = o.formula;
  doc["n"] = d.n();
  doc["edges"] = p.E;
  doc["forbiddenEdges"] = p.X;
  doc["lambda"] = num(p.lambda);

  auto regular_degree = [&]() {
    if (!d.is_regular()) throw InputError("formula '" + o.formula + "' needs a regular degree sequence");
    return d[0];
  };

  const std::string& f = o.formula;
  if (f == "naive") {
    doc["estimate"] = estimate_json(naive_estimate(p));
  } else if (f == "dense") {
    doc["estimate"] = estimate_json(dense_count_estimate(p));
  } else if (f == "miss" || f == "hit" || f == "num") {
    const MissHit mh = miss_hit_estimate(p);
    if (f == "miss") {
      doc["estimate"] = estimate_json(mh.miss);
      doc["logProbability"] = num(miss_log_probability(p, mh.miss));
    } else if (f == "hit") {
      doc["estimate"] = estimate_json(mh.hit);
      doc["logProbability"] = num(hit_log_probability(p, mh.hit));
    } else {
      doc["estimate"] = estimate_json(mh.num);
    }
  } else if (f == "flat" || f == "reg") {
    const MissHit mh = specialized_estimates(p, f == "flat" ? SpecialCase::Flat : SpecialCase::Reg);
    doc["num"] = estimate_json(mh.num);
    doc["miss"] = estimate_json(mh.miss);
    doc["hit"] = estimate_json(mh.hit);
    doc["missLogProbability"] = num(miss_log_probability(p, mh.miss));
    doc["hitLogProbability"] = num(hit_log_probability(p, mh.hit));
  } else if (f == "flat-miss" || f == "flat-hit" || f == "reg-miss" || f == "reg-hit") {
    const bool flat = f.starts_with("flat");
    const MissHit mh = specialized_estimates(p, flat ? SpecialCase::Flat : SpecialCase::Reg);
    const bool miss = f.ends_with("miss");
    doc["estimate"] = estimate_json(miss ? mh.miss : mh.hit);
    doc["logProbability"] = num(miss ? miss_log_probability(p, mh.miss) : hit_log_probability(p, mh.hit));
  } else if (f == "induced" || f == "lambda-model" || f == "induced-leading") {
    if (o.m < 1) throw InputError("--m is required for induced formulas");
    const InducedModel model =
        f == "induced" ? InducedModel::Full : (f == "lambda-model" ? InducedModel::LambdaModel : InducedModel::Leading);
    doc["m"] = o.m;
    doc["estimate"] = estimate_json(induced_estimate(p, x, o.m, model));
    doc["logProbability"] = doc["estimate"]["logValue"];
  } else if (f == "overlap") {
    // The --forbidden graph plays the role of Y.
    json dist = json::array();
    const std::int64_t lo = o.k >= 0 ? o.k : 0;
    const std::int64_t hi = o.k >= 0 ? o.k : p.X;
    for (std::int64_t k = lo; k <= hi; ++k) {
      dist.push_back({{"k", k}, {"probability", num(overlap_distribution_estimate(p, p.X, k))}});
    }
    doc["scale"] = "linear";
    doc["distribution"] = dist;
  } else if (f == "perth" || f == "mckay81") {
    doc["estimate"] = estimate_json(sparse_estimate(p, x, f == "perth" ? SparseFormula::Perth : SparseFormula::McKay81));
  } else if (f == "matchings" || f == "cycles" || f == "sptrees") {
    const RegularTarget t =
        f == "matchings" ? RegularTarget::Matchings : (f == "cycles" ? RegularTarget::Cycles : RegularTarget::SpanningTrees);
    if (f == "cycles") doc["q"] = o.q;
    doc["estimate"] = estimate_json(regular_graph_expectation(d.n(), regular_degree(), t, o.q));
  } else {
    throw InputError("unknown formula '" + f + "'");
  }
  doc["validity"] = validity_json(check_validity(p, AdvisoryConstants{o.adv_a, o.adv_b}));
  emit(doc, o.in.format, std::cout);
  return 0;
}

// saddle --------------------------------------------------------------------

struct SaddleOpts {
  Inputs in;
  std::string mode = "converge";
  double tol = 1e-12;
  int max_iter = 500;
  int iterations = 4;
};

int run_saddle(const SaddleOpts& o) {
  const DegreeSequence d = load_degrees(o.in);
  const ForbiddenGraph x = load_forbidden(o.in, d.n());
  SaddleConfig cfg;
  cfg.mode = o.mode == "fixed" ? SaddleMode::FixedIterations : SaddleMode::Converge;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.fixed_iterations = o.iterations;
  const SaddlePoint sp = solve_saddle(d, x, cfg);
  json doc = header("saddle");
  doc["n"] = sp.n;
  doc["mode"] = o.mode;
  doc["method"] = sp.method == SaddleMethod::Newton ? "newton" : "contraction";
  doc["iterations"] = sp.iterations;
  doc["lambda"] = num(sp.lambda);
  doc["r"] = num(sp.r);
  json radii = json::array();
  json a = json::array();
  json res = json::array();
  for (int j = 0; j < sp.n; ++j) {
    radii.push_back(num(sp.radii[static_cast<std::size_t>(j)]));
    a.push_back(num(sp.a[static_cast<std::size_t>(j)]));
    res.push_back(num(sp.residual[static_cast<std::size_t>(j)]));
  }
  doc["radii"] = radii;
  doc["a"] = a;
  doc["residual"] = res;
  doc["maxResidual"] = num(sp.max_residual());
  doc["logPrefactor"] = num(log_prefactor(sp, d, x));
  emit(doc, o.in.format, std::cout);
  return 0;
}

// verify-start --------------------------------------------------------------

struct VerifyOpts {
  Inputs in;
  int grid = 4;
  double tol = 1e-8;
};

int run_verify(const VerifyOpts& o) {
  const DegreeSequence d = load_degrees(o.in);
  const ForbiddenGraph x = load_forbidden(o.in, d.n());
  QuadratureConfig q;
  q.initial_grid = o.grid;
  q.rel_tol = o.tol;
  const ContourCheck c = verify_start(d, x, q);
  json doc = header("verify-start");
  doc["n"] = d.n();
  doc["exact"] = c.exact.str();
  doc["logPrefactor"] = num(c.log_prefactor);
  doc["integral"] = complex_json(c.integral);
  doc["product"] = num(c.product);
  doc["relError"] = num(c.rel_error);
  doc["imagRatio"] = num(c.imag_ratio);
  doc["grid"] = c.grid;
  doc["radii"] = c.saddle_radii ? "saddle" : "unit";
  emit(doc, o.in.format, std::cout);
  return 0;
}

// mw3 -----------------------------------------------------------------------

struct Mw3Opts {
  Inputs in;
  std::string coefficients;
  std::int64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  int streams = 8;
};

int run_mw3(const Mw3Opts& o) {
  if (o.coefficients.empty()) throw InputError("--coefficients is required");
  const CoefficientSet c = parse_coefficients(io::read_file(o.coefficients));
  BoxIntegralConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed.value_or(env_seed());
  cfg.streams = o.streams;
  cfg.threads = env_threads();
  json doc = header("mw3");
  doc["N"] = c.N;
  doc["A"] = c.A;
  doc["epsHat"] = c.eps_hat;
  doc["theta1"] = complex_json(theta1(c));
  doc["zFactor"] = num(z_factor(c));
  const BoxIntegralResult r = mc_box_integral(c, cfg);
  doc["mc"] = {{"scale", "linear"},
               {"mean", complex_json(r.mean)},
               {"stderr", {{"re", num(r.stderr_re)}, {"im", num(r.stderr_im)}}},
               {"ratioToGaussian", complex_json(r.ratio)},
               {"logGaussian", num(r.log_gaussian)},
               {"boxMass", num(r.box_mass)},
               {"acceptance", num(r.acceptance)},
               {"samples", r.samples},
               {"seed", r.seed},
               {"streams", r.streams}};
  emit(doc, o.in.format, std::cout);
  return 0;
}

// sample --------------------------------------------------------------------

struct SampleOpts {
  Inputs in;
  std::string event = "hit";
  int m = 0;
  std::int64_t samples = 10000;
  std::int64_t burn_in = -1;
  std::int64_t thinning = 0;
  std::optional<std::uint64_t> seed;
  int chains = 4;
  std::string dump;
};

int run_sample(const SampleOpts& o) {
  const DegreeSequence d = load_degrees(o.in);
  const ForbiddenGraph x = load_forbidden(o.in, d.n());
  Event ev = Event::hit();
  if (o.event == "miss") ev = Event::miss();
  else if (o.event == "induced") {
    if (o.m < 1) throw InputError("--m is required for the induced event");
    ev = Event::induced(o.m);
  } else if (o.event != "hit") {
    throw InputError("unknown event '" + o.event + "'");
  }
  SamplerConfig cfg;
  cfg.samples = o.samples;
  cfg.burn_in = o.burn_in;
  cfg.thinning = o.thinning;
  cfg.seed = o.seed.value_or(env_seed());
  cfg.chains = o.chains;
  cfg.threads = env_threads();
  const MCEstimate e = estimate_probability(d, x, ev, cfg);
  if (!o.dump.empty()) {
    const auto graphs = sample_graphs(d, 1, cfg.burn_in, cfg.thinning, cfg.seed);
    std::ofstream out(o.dump);
    if (!out) throw InputError("cannot write " + o.dump);
    out << io::format_edge_list(ForbiddenGraph(d.n(), graphs.front().sorted_edges()));
  }
  json doc = header("sample");
  doc["event"] = o.event;
  if (ev.kind == EventKind::Induced) doc["m"] = o.m;
  doc["scale"] = "linear";
  doc["mean"] = num(e.mean);
  doc["stderr"] = num(e.std_error);
  doc["hits"] = e.hits;
  doc["samples"] = e.samples;
  doc["burnIn"] = e.burn_in;
  doc["thinning"] = e.thinning;
  doc["chains"] = cfg.chains;
  doc["seed"] = e.seed;
  doc["acceptance"] = num(e.acceptance);
  emit(doc, o.in.format, std::cout);
  return 0;
}

// validate ------------------------------------------------------------------

struct ValidateOpts {
  std::string suite = "small";
  std::vector<int> criteria;
  std::string format = "auto";
  std::optional<std::uint64_t> seed;
};

int run_validate(const ValidateOpts& o) {
  ValidationOptions opts;
  opts.seed = o.seed.value_or(env_seed());
  opts.threads = env_threads();
  std::vector<int> ids = o.criteria;
  if (ids.empty()) ids = suite_criteria(o.suite == "full" ? Suite::Full : Suite::Small);
  const bool table = o.format == "auto" || o.format == "text";
  if (table) std::cout << "id  result  measured      threshold     seconds  name\n";
  json rows = json::array();
  bool all = true;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, opts);
    all = all && r.passed;
    if (table) {
      char line[160];
      std::snprintf(line, sizeof line, "%-3d %-7s %-13.6g %-13.6g %-8.1f %s\n", r.id, r.passed ? "PASS" : "FAIL",
                    r.measured, r.threshold, r.seconds, r.name.c_str());
      std::cout << line << "    " << r.detail << '\n' << std::flush;
    }
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"measured", num(r.measured)},
                    {"threshold", num(r.threshold)},
                    {"detail", r.detail}});
  }
  if (!table) {
    json doc = header("validate");
    doc["seed"] = opts.seed;
    doc["criteria"] = rows;
    doc["passed"] = all;
    emit(doc, o.format, std::cout);
  }
  return all ? 0 : 1;
}

void add_inputs(CLI::App* sub, Inputs& in, bool forbidden = true) {
  sub->add_option("-d,--degrees", in.degrees, "degree file (one integer per line, or a JSON array)")
      ->check(CLI::ExistingFile);
  if (forbidden) {
    sub->add_option("-x,--forbidden", in.forbidden, "edge list of X, 1-indexed 'j k' per line")
        ->check(CLI::ExistingFile);
  }
  sub->add_option("--format", in.format, "output format")->check(CLI::IsMember({"auto", "json", "csv", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic enumeration of graphs with given degrees"};
  app.require_subcommand(1);

  CountOpts count;
  auto* c = app.add_subcommand("count", "exact number of graphs with degrees d avoiding X");
  add_inputs(c, count.in);
  c->add_flag("--timing", count.timing, "report elapsed time");
  c->add_option("--max-n", count.max_n, "raise the exact-count vertex limit");

  EstimateOpts est;
  auto* e = app.add_subcommand("estimate", "asymptotic formulas");
  add_inputs(e, est.in);
  e->add_option("-f,--formula", est.formula, "formula")
      ->check(CLI::IsMember({"naive", "dense", "miss", "hit", "num", "flat", "reg", "flat-miss", "flat-hit", "reg-miss", "reg-hit",
                             "induced", "lambda-model", "induced-leading", "overlap", "perth", "mckay81", "matchings",
                             "cycles", "sptrees"}));
  e->add_option("-m,--m", est.m, "induced subgraph order");
  e->add_option("-k,--k", est.k, "overlap size (default: whole distribution)");
  e->add_option("-q,--q", est.q, "cycle length");
  e->add_option("--advisory-a", est.adv_a, "validity constant a");
  e->add_option("--advisory-b", est.adv_b, "validity constant b");

  SaddleOpts sad;
  auto* s = app.add_subcommand("saddle", "solve the saddle-point equations");
  add_inputs(s, sad.in);
  s->add_option("--mode", sad.mode)->check(CLI::IsMember({"converge", "fixed"}));
  s->add_option("--tol", sad.tol);
  s->add_option("--max-iter", sad.max_iter);
  s->add_option("--iterations", sad.iterations, "sweeps in fixed mode");

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify-start", "check G = P I by quadrature (n <= 5)");
  add_inputs(v, ver.in);
  v->add_option("--grid", ver.grid, "initial points per angle");
  v->add_option("--tol", ver.tol, "relative refinement tolerance");

  Mw3Opts mw;
  auto* w = app.add_subcommand("mw3", "box integral: theta1, Z and a Monte Carlo estimate");
  w->add_option("--coefficients", mw.coefficients, "coefficient JSON document")->check(CLI::ExistingFile);
  w->add_option("--samples", mw.samples);
  w->add_option("--seed", mw.seed);
  w->add_option("--streams", mw.streams);
  w->add_option("--format", mw.in.format)->check(CLI::IsMember({"auto", "json", "csv", "text"}));

  SampleOpts smp;
  auto* sm = app.add_subcommand("sample", "switch-chain estimate of an event probability");
  add_inputs(sm, smp.in);
  sm->add_option("--event", smp.event)->check(CLI::IsMember({"miss", "hit", "induced"}));
  sm->add_option("-m,--m", smp.m);
  sm->add_option("--samples", smp.samples);
  sm->add_option("--burn-in", smp.burn_in, "default 10 E ln E");
  sm->add_option("--thinning", smp.thinning, "default E");
  sm->add_option("--seed", smp.seed);
  sm->add_option("--chains", smp.chains);
  sm->add_option("--dump", smp.dump, "write one sampled graph as an edge list");

  ValidateOpts val;
  auto* va = app.add_subcommand("validate", "run the acceptance checks");
  va->add_option("--suite", val.suite)->check(CLI::IsMember({"small", "full"}));
  va->add_option("--criterion", val.criteria, "run only these criteria (1-10)")->check(CLI::Range(1, 10));
  va->add_option("--seed", val.seed);
  va->add_option("--format", val.format)->check(CLI::IsMember({"auto", "json", "csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c) return run_count(count);
    if (*e) return run_estimate(est);
    if (*s) return run_saddle(sad);
    if (*v) return run_verify(ver);
    if (*w) return run_mw3(mw);
    if (*sm) return run_sample(smp);
    if (*va) return run_validate(val);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const io::ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const InvalidInput& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const LimitExceeded& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const UndefinedProbability& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const DegenerateDensity& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const DegenerateProposal& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "failure: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
