#include "degenum/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "degenum/mw_integral.hpp"

namespace degenum {

LabeledGraph::LabeledGraph(int n, const std::vector<Edge>& edges) : n_(n), adj_(static_cast<std::size_t>(n)) {
  if (n < 0) throw InvalidInput("negative vertex count");
  edges_.reserve(edges.size());
  pairs_.reserve(edges.size() * 2);
  for (auto [j, k] : edges) {
    if (j < 0 || k < 0 || j >= n || k >= n) throw InvalidInput("edge endpoint out of range");
    if (j == k) throw InvalidInput("loop at vertex " + std::to_string(j + 1));
    if (!pairs_.insert(key(j, k)).second) {
      throw InvalidInput("duplicate edge " + std::to_string(j + 1) + " " + std::to_string(k + 1));
    }
    edges_.emplace_back(std::min(j, k), std::max(j, k));
    add_adj(j, k);
  }
}

std::uint64_t LabeledGraph::key(int j, int k) const {
  if (j > k) std::swap(j, k);
  return static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(k);
}

bool LabeledGraph::has_edge(int j, int k) const { return j != k && pairs_.contains(key(j, k)); }

void LabeledGraph::add_adj(int j, int k) {
  auto& aj = adj_[static_cast<std::size_t>(j)];
  aj.insert(std::lower_bound(aj.begin(), aj.end(), k), k);
  auto& ak = adj_[static_cast<std::size_t>(k)];
  ak.insert(std::lower_bound(ak.begin(), ak.end(), j), j);
}

void LabeledGraph::remove_adj(int j, int k) {
  auto& aj = adj_[static_cast<std::size_t>(j)];
  aj.erase(std::lower_bound(aj.begin(), aj.end(), k));
  auto& ak = adj_[static_cast<std::size_t>(k)];
  ak.erase(std::lower_bound(ak.begin(), ak.end(), j));
}

std::vector<int> LabeledGraph::degrees() const {
  std::vector<int> out(adj_.size());
  for (std::size_t j = 0; j < adj_.size(); ++j) out[j] = static_cast<int>(adj_[j].size());
  return out;
}

std::vector<Edge> LabeledGraph::sorted_edges() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

bool LabeledGraph::try_swap(std::size_t i, std::size_t i2, bool cross) {
  if (i == i2) return false;
  auto [a, b] = edges_[i];
  auto [c, d] = edges_[i2];
  if (cross) std::swap(c, d);
  // New edges {a,c} and {b,d}.
  if (a == c || b == d) return false;
  if (has_edge(a, c) || has_edge(b, d)) return false;
  pairs_.erase(key(a, b));
  pairs_.erase(key(c, d));
  remove_adj(a, b);
  remove_adj(c, d);
  pairs_.insert(key(a, c));
  pairs_.insert(key(b, d));
  add_adj(a, c);
  add_adj(b, d);
  edges_[i] = {std::min(a, c), std::max(a, c)};
  edges_[i2] = {std::min(b, d), std::max(b, d)};
  return true;
}

LabeledGraph realize(const DegreeSequence& d) {
  const auto& deg = d.degrees();
  if (!is_graphical(deg)) throw NonGraphical("degree sequence is not graphical");
  const int n = d.n();
  std::vector<int> residual(deg.begin(), deg.end());
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(d.edge_count()));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    // Largest residual first; ties by label so the result is deterministic.
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
      return residual[static_cast<std::size_t>(u)] > residual[static_cast<std::size_t>(v)];
    });
    const int v = order[0];
    const int need = residual[static_cast<std::size_t>(v)];
    if (need == 0) break;
    residual[static_cast<std::size_t>(v)] = 0;
    for (int t = 1; t <= need; ++t) {
      const int u = order[static_cast<std::size_t>(t)];
      if (t >= n || residual[static_cast<std::size_t>(u)] == 0) {
        throw std::logic_error("Havel-Hakimi failed on a graphical sequence");
      }
      --residual[static_cast<std::size_t>(u)];
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  return LabeledGraph(n, edges);
}

bool switch_step(LabeledGraph& g, std::mt19937_64& rng) {
  const auto m = static_cast<std::uint64_t>(g.edge_count());
  if (m < 2) return false;
  std::uniform_int_distribution<std::uint64_t> pick(0, m - 1);
  const std::uint64_t i = pick(rng);
  const std::uint64_t i2 = pick(rng);
  const bool cross = (rng() & 1U) != 0;
#ifndef NDEBUG
  const auto [a, b] = g.edges()[i];
  const auto [c, d] = g.edges()[i2];
  const int before[4] = {g.degree(a), g.degree(b), g.degree(c), g.degree(d)};
#endif
  const bool accepted = g.try_swap(i, i2, cross);
#ifndef NDEBUG
  assert(before[0] == g.degree(a) && before[1] == g.degree(b) && before[2] == g.degree(c) &&
         before[3] == g.degree(d));
#endif
  return accepted;
}

bool event_holds(const LabeledGraph& g, const ForbiddenGraph& x, Event event) {
  switch (event.kind) {
    case EventKind::Miss:
      for (auto [j, k] : x.edges())
        if (g.has_edge(j, k)) return false;
      return true;
    case EventKind::Hit:
      for (auto [j, k] : x.edges())
        if (!g.has_edge(j, k)) return false;
      return true;
    case EventKind::Induced:
      for (int j = 0; j < event.m; ++j)
        for (int k = j + 1; k < event.m; ++k)
          if (g.has_edge(j, k) != x.has_edge(j, k)) return false;
      return true;
  }
  return false;
}

namespace {

std::int64_t default_burn_in(std::int64_t edges) {
  if (edges < 2) return 0;
  const double e = static_cast<double>(edges);
  return static_cast<std::int64_t>(std::ceil(10.0 * e * std::log(e)));
}

std::int64_t default_thinning(std::int64_t edges) { return std::max<std::int64_t>(1, edges); }

}  // namespace

MCEstimate estimate_probability(const DegreeSequence& d, const ForbiddenGraph& x, Event event,
                                const SamplerConfig& config) {
  if (x.n() != d.n()) throw InvalidInput("forbidden graph and degree sequence differ in n");
  if (config.samples < 1) throw InvalidInput("samples must be at least 1");
  if (config.chains < 1 || config.batches_per_chain < 1) throw InvalidInput("chains and batches must be positive");
  if (event.kind == EventKind::Induced && (event.m < 0 || event.m > d.n())) {
    throw InvalidInput("induced vertex count out of range");
  }
  const LabeledGraph start = realize(d);
  const std::int64_t E = start.edge_count();
  const std::int64_t burn_in = config.burn_in >= 0 ? config.burn_in : default_burn_in(E);
  const std::int64_t thinning = config.thinning > 0 ? config.thinning : default_thinning(E);

  const int chains = config.chains;
  struct ChainResult {
    std::vector<std::int64_t> batch_hits;
    std::vector<std::int64_t> batch_sizes;
    std::int64_t accepted = 0;
    std::int64_t steps = 0;
  };
  std::vector<ChainResult> results(static_cast<std::size_t>(chains));

  auto run_chain = [&](int c) {
    std::mt19937_64 rng(splitmix64(config.seed + static_cast<std::uint64_t>(c)));
    LabeledGraph g = start;
    for (std::int64_t s = 0; s < burn_in; ++s) switch_step(g, rng);
    const std::int64_t count = config.samples / chains + (c < config.samples % chains ? 1 : 0);
    const int batches = static_cast<int>(std::min<std::int64_t>(config.batches_per_chain, std::max<std::int64_t>(count, 1)));
    ChainResult& r = results[static_cast<std::size_t>(c)];
    r.batch_hits.assign(static_cast<std::size_t>(batches), 0);
    r.batch_sizes.assign(static_cast<std::size_t>(batches), 0);
    for (std::int64_t i = 0; i < count; ++i) {
      for (std::int64_t s = 0; s < thinning; ++s) r.accepted += switch_step(g, rng) ? 1 : 0;
      r.steps += thinning;
      const auto b = static_cast<std::size_t>(i * batches / count);
      ++r.batch_sizes[b];
      if (event_holds(g, x, event)) ++r.batch_hits[b];
    }
  };

  const int threads = std::max(1, std::min(config.threads, chains));
  if (threads == 1) {
    for (int c = 0; c < chains; ++c) run_chain(c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int c = t; c < chains; c += threads) run_chain(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> means;
  std::int64_t hits = 0;
  std::int64_t total = 0;
  std::int64_t accepted = 0;
  std::int64_t steps = 0;
  for (const auto& r : results) {
    for (std::size_t b = 0; b < r.batch_hits.size(); ++b) {
      if (r.batch_sizes[b] == 0) continue;
      means.push_back(static_cast<double>(r.batch_hits[b]) / static_cast<double>(r.batch_sizes[b]));
      hits += r.batch_hits[b];
      total += r.batch_sizes[b];
    }
    accepted += r.accepted;
    steps += r.steps;
  }
  MCEstimate out;
  out.mean = static_cast<double>(hits) / static_cast<double>(total);
  if (means.size() > 1) {
    double ss = 0.0;
    for (double m : means) ss += (m - out.mean) * (m - out.mean);
    const double k = static_cast<double>(means.size());
    out.std_error = std::sqrt(ss / (k - 1.0) / k);
  }
  out.samples = total;
  out.burn_in = burn_in;
  out.thinning = thinning;
  out.seed = config.seed;
  out.hits = hits;
  out.acceptance = steps > 0 ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0;
  return out;
}

std::vector<LabeledGraph> sample_graphs(const DegreeSequence& d, std::int64_t count, std::int64_t burn_in,
                                        std::int64_t thinning, std::uint64_t seed) {
  LabeledGraph g = realize(d);
  if (burn_in < 0) burn_in = default_burn_in(g.edge_count());
  if (thinning <= 0) thinning = default_thinning(g.edge_count());
  std::mt19937_64 rng(splitmix64(seed));
  for (std::int64_t s = 0; s < burn_in; ++s) switch_step(g, rng);
  std::vector<LabeledGraph> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t i = 0; i < count; ++i) {
    for (std::int64_t s = 0; s < thinning; ++s) switch_step(g, rng);
    out.push_back(g);
  }
  return out;
}

}  // namespace degenum
