#include "degenum/exact_count.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace degenum {

namespace {

constexpr char kDone = static_cast<char>(0x7f);

class Counter {
 public:
  Counter(const DegreeSequence& d, const ForbiddenGraph& x)
      : n_(d.n()), x_(x), residual_(d.degrees().begin(), d.degrees().end()),
        remaining_(static_cast<std::size_t>(n_), true) {}

  BigInt run() { return count(); }

 private:
  [[nodiscard]] bool allowed(int j, int k) const { return j != k && !x_.has_edge(j, k); }

  BigInt count() {
    // Feasibility: each residual fits the remaining allowed neighbourhood.
    bool any = false;
    bool x_left = false;
    int total = 0;
    for (int u = 0; u < n_; ++u) {
      if (!remaining_[static_cast<std::size_t>(u)]) continue;
      any = true;
      const int r = residual_[static_cast<std::size_t>(u)];
      total += r;
      int room = 0;
      for (int w = 0; w < n_; ++w) {
        if (!remaining_[static_cast<std::size_t>(w)] || w == u) continue;
        if (allowed(u, w)) {
          ++room;
        } else {
          x_left = true;
        }
      }
      if (r > room) return 0;
    }
    if (!any) return 1;
    if (total % 2 != 0) return 0;
    if (total == 0) return 1;

    std::string key = make_key(x_left);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int v = pick_vertex(x_left);
    std::vector<int> candidates;
    for (int u = 0; u < n_; ++u) {
      if (remaining_[static_cast<std::size_t>(u)] && u != v && allowed(v, u) &&
          residual_[static_cast<std::size_t>(u)] > 0) {
        candidates.push_back(u);
      }
    }
    const int need = residual_[static_cast<std::size_t>(v)];
    BigInt result = 0;
    if (need <= static_cast<int>(candidates.size())) {
      remaining_[static_cast<std::size_t>(v)] = false;
      residual_[static_cast<std::size_t>(v)] = 0;
      choose(candidates, 0, need, result);
      residual_[static_cast<std::size_t>(v)] = need;
      remaining_[static_cast<std::size_t>(v)] = true;
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  void choose(const std::vector<int>& candidates, std::size_t from, int left, BigInt& acc) {
    if (left == 0) {
      acc += count();
      return;
    }
    for (std::size_t i = from; i + static_cast<std::size_t>(left) <= candidates.size(); ++i) {
      const auto u = static_cast<std::size_t>(candidates[i]);
      --residual_[u];
      choose(candidates, i + 1, left - 1, acc);
      ++residual_[u];
    }
  }

  // Vertices with X-edges to the remaining set go first so the subproblem
  // becomes X-free (and canonical) quickly; otherwise largest residual.
  [[nodiscard]] int pick_vertex(bool x_left) const {
    int best = -1;
    int best_score = -1;
    for (int u = 0; u < n_; ++u) {
      if (!remaining_[static_cast<std::size_t>(u)]) continue;
      int score = residual_[static_cast<std::size_t>(u)];
      if (x_left) {
        bool touches = false;
        for (int w = 0; w < n_ && !touches; ++w)
          touches = w != u && remaining_[static_cast<std::size_t>(w)] && x_.has_edge(u, w);
        if (touches) score += n_;
      }
      if (score > best_score) {
        best_score = score;
        best = u;
      }
    }
    return best;
  }

  [[nodiscard]] std::string make_key(bool x_left) const {
    std::string key;
    key.reserve(static_cast<std::size_t>(n_) + 1);
    if (x_left) {
      key.push_back('F');
      for (int u = 0; u < n_; ++u) {
        key.push_back(remaining_[static_cast<std::size_t>(u)]
                          ? static_cast<char>(residual_[static_cast<std::size_t>(u)])
                          : kDone);
      }
    } else {
      key.push_back('C');
      std::string body;
      for (int u = 0; u < n_; ++u)
        if (remaining_[static_cast<std::size_t>(u)]) body.push_back(static_cast<char>(residual_[static_cast<std::size_t>(u)]));
      std::sort(body.begin(), body.end());
      key += body;
    }
    return key;
  }

  int n_;
  const ForbiddenGraph& x_;
  std::vector<int> residual_;
  std::vector<bool> remaining_;
  std::unordered_map<std::string, BigInt> memo_;
};

void check_limit(int n, bool empty_x, const ExactCountConfig& config) {
  const int limit = empty_x ? config.max_n_empty : config.max_n_forbidden;
  if (n > limit) {
    throw LimitExceeded("exact count limited to n <= " + std::to_string(limit) + " (got n = " +
                        std::to_string(n) + ")");
  }
}

BigInt count_or_zero(const std::optional<DegreeSequence>& d, const ForbiddenGraph& x,
                     const ExactCountConfig& config) {
  if (!d) return 0;
  return exact_count(*d, x, config).value;
}

}  // namespace

ExactCount exact_count(const DegreeSequence& d, const ForbiddenGraph& x,
                       const ExactCountConfig& config) {
  if (d.n() != x.n()) throw InvalidInput("dimension mismatch between d and X");
  check_limit(d.n(), x.empty(), config);
  for (int j = 0; j < d.n(); ++j)
    if (d[j] > d.n() - 1 - x.row_sum(j)) return {0};
  Counter counter(d, x);
  return {counter.run()};
}

BigInt full_enumeration_count(const DegreeSequence& d, const ForbiddenGraph& x) {
  if (d.n() != x.n()) throw InvalidInput("dimension mismatch between d and X");
  const int n = d.n();
  if (n > 7) throw LimitExceeded("full enumeration limited to n <= 7");
  std::vector<Edge> pairs;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<int> deg(static_cast<std::size_t>(n));
  BigInt count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::fill(deg.begin(), deg.end(), 0);
    bool ok = true;
    for (std::size_t e = 0; e < pairs.size() && ok; ++e) {
      if ((mask >> e) & 1U) {
        const auto [j, k] = pairs[e];
        if (x.has_edge(j, k)) ok = false;
        ++deg[static_cast<std::size_t>(j)];
        ++deg[static_cast<std::size_t>(k)];
      }
    }
    if (!ok) continue;
    bool match = true;
    for (int j = 0; j < n && match; ++j) match = deg[static_cast<std::size_t>(j)] == d[j];
    if (match) ++count;
  }
  return count;
}

Rational exact_probability(const DegreeSequence& d, const ForbiddenGraph& x, Event event,
                           const ExactCountConfig& config) {
  if (d.n() != x.n()) throw InvalidInput("dimension mismatch between d and X");
  const BigInt total = exact_count(d, ForbiddenGraph(d.n()), config).value;
  if (total == 0) throw UndefinedProbability("no graph has this degree sequence");
  switch (event.kind) {
    case EventKind::Miss:
      return Rational(exact_count(d, x, config).value, total);
    case EventKind::Hit:
      return Rational(count_or_zero(subtract_row_sums(d, x), x, config), total);
    case EventKind::Induced: {
      if (event.m < 0 || event.m > d.n()) throw InvalidInput("induced order out of range");
      for (int j = event.m; j < d.n(); ++j) {
        if (x.row_sum(j) != 0) {
          throw InvalidInput("induced subgraph: vertex " + std::to_string(j + 1) +
                             " has an X-edge but lies outside 1.." + std::to_string(event.m));
        }
      }
      const ForbiddenGraph clique = ForbiddenGraph::complete(d.n(), event.m);
      return Rational(count_or_zero(subtract_row_sums(d, x), clique, config), total);
    }
  }
  return 0;
}

std::vector<Rational> exact_overlap_distribution(const DegreeSequence& d, const ForbiddenGraph& y,
                                                 const ExactCountConfig& config) {
  if (d.n() != y.n()) throw InvalidInput("dimension mismatch between d and Y");
  const auto edges = y.edges();
  const auto ny = static_cast<int>(edges.size());
  if (ny > config.max_overlap_edges) {
    throw LimitExceeded("overlap distribution limited to " +
                        std::to_string(config.max_overlap_edges) + " edges of Y");
  }
  const BigInt total = exact_count(d, ForbiddenGraph(d.n()), config).value;
  if (total == 0) throw UndefinedProbability("no graph has this degree sequence");
  std::vector<BigInt> by_size(static_cast<std::size_t>(ny) + 1, 0);
  for (std::uint32_t mask = 0; mask < (1U << ny); ++mask) {
    std::vector<Edge> subset;
    for (int e = 0; e < ny; ++e)
      if ((mask >> e) & 1U) subset.push_back(edges[static_cast<std::size_t>(e)]);
    const ForbiddenGraph xs(d.n(), subset);
    by_size[subset.size()] += count_or_zero(subtract_row_sums(d, xs), y, config);
  }
  std::vector<Rational> out;
  out.reserve(by_size.size());
  for (const auto& c : by_size) out.emplace_back(c, total);
  return out;
}

}  // namespace degenum
