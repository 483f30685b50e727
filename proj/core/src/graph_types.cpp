#include "degenum/graph_types.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace degenum {

namespace {

std::string vertex_label(int j) { return std::to_string(j + 1); }

}  // namespace

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw InvalidInput("degree sequence must have at least one vertex");
  const int n = this->n();
  for (int j = 0; j < n; ++j) {
    const int dj = degrees_[static_cast<std::size_t>(j)];
    if (dj < 0 || dj > n - 1) {
      throw InvalidInput("degree of vertex " + vertex_label(j) + " is " + std::to_string(dj) +
                         ", outside [0, " + std::to_string(n - 1) + "]");
    }
  }
  if (degree_sum() % 2 != 0) throw InvalidInput("degree sum is odd");
}

std::optional<DegreeSequence> DegreeSequence::try_make(std::vector<int> degrees) {
  try {
    return DegreeSequence(std::move(degrees));
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

DegreeSequence DegreeSequence::regular(int n, int d) {
  return DegreeSequence(std::vector<int>(static_cast<std::size_t>(n), d));
}

std::int64_t DegreeSequence::degree_sum() const noexcept {
  return std::accumulate(degrees_.begin(), degrees_.end(), std::int64_t{0});
}

bool DegreeSequence::is_regular() const noexcept {
  return std::adjacent_find(degrees_.begin(), degrees_.end(), std::not_equal_to<>()) ==
         degrees_.end();
}

int DegreeSequence::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

ForbiddenGraph::ForbiddenGraph(int n, std::vector<Edge> edges)
    : n_(n),
      adjacency_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
      row_sums_(static_cast<std::size_t>(n), 0) {
  if (n < 1) throw InvalidInput("graph must have at least one vertex");
  edges_.reserve(edges.size());
  for (auto [j, k] : edges) {
    if (j < 0 || j >= n || k < 0 || k >= n) {
      throw InvalidInput("edge {" + vertex_label(j) + "," + vertex_label(k) +
                         "} has a vertex outside 1.." + std::to_string(n));
    }
    if (j == k) throw InvalidInput("self-loop at vertex " + vertex_label(j));
    if (j > k) std::swap(j, k);
    auto& cell = adjacency_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                            static_cast<std::size_t>(k)];
    if (cell != 0) {
      throw InvalidInput("edge {" + vertex_label(j) + "," + vertex_label(k) + "} listed twice");
    }
    cell = 1;
    adjacency_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j)] = 1;
    ++row_sums_[static_cast<std::size_t>(j)];
    ++row_sums_[static_cast<std::size_t>(k)];
    edges_.emplace_back(j, k);
  }
  std::sort(edges_.begin(), edges_.end());
}

ForbiddenGraph ForbiddenGraph::complete(int n, int m) {
  std::vector<Edge> edges;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) edges.emplace_back(j, k);
  return ForbiddenGraph(n, std::move(edges));
}

int ForbiddenGraph::max_row_sum() const noexcept {
  return row_sums_.empty() ? 0 : *std::max_element(row_sums_.begin(), row_sums_.end());
}

std::vector<int> ForbiddenGraph::neighbors(int j) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(row_sum(j)));
  for (int k = 0; k < n_; ++k)
    if (has_edge(j, k)) out.push_back(k);
  return out;
}

bool ForbiddenGraph::is_regular() const noexcept {
  return std::adjacent_find(row_sums_.begin(), row_sums_.end(), std::not_equal_to<>()) ==
         row_sums_.end();
}

ForbiddenGraph ForbiddenGraph::relabeled(std::span<const int> perm) const {
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (auto [j, k] : edges_)
    edges.emplace_back(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(k)]);
  return ForbiddenGraph(n_, std::move(edges));
}

ForbiddenGraph ForbiddenGraph::with_edge(int j, int k) const {
  std::vector<Edge> edges(edges_.begin(), edges_.end());
  edges.emplace_back(j, k);
  return ForbiddenGraph(n_, std::move(edges));
}

std::optional<DegreeSequence> subtract_row_sums(const DegreeSequence& d,
                                                const ForbiddenGraph& x) {
  if (d.n() != x.n()) throw InvalidInput("dimension mismatch between d and X");
  std::vector<int> out(static_cast<std::size_t>(d.n()));
  for (int j = 0; j < d.n(); ++j) out[static_cast<std::size_t>(j)] = d[j] - x.row_sum(j);
  return DegreeSequence::try_make(std::move(out));
}

std::optional<DegreeSequence> complement_degrees(const DegreeSequence& d,
                                                 const ForbiddenGraph& x) {
  if (d.n() != x.n()) throw InvalidInput("dimension mismatch between d and X");
  const int n = d.n();
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = n - 1 - d[j] - x.row_sum(j);
  return DegreeSequence::try_make(std::move(out));
}

DegreeSequence relabeled(const DegreeSequence& d, std::span<const int> perm) {
  std::vector<int> out(static_cast<std::size_t>(d.n()));
  for (int j = 0; j < d.n(); ++j) out[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = d[j];
  return DegreeSequence(std::move(out));
}

bool is_graphical(std::span<const int> degrees) {
  const auto n = static_cast<std::int64_t>(degrees.size());
  std::vector<std::int64_t> d(degrees.begin(), degrees.end());
  std::int64_t total = 0;
  for (auto v : d) {
    if (v < 0 || v > n - 1) return false;
    total += v;
  }
  if (total % 2 != 0) return false;
  std::sort(d.begin(), d.end(), std::greater<>());
  std::int64_t prefix = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    prefix += d[static_cast<std::size_t>(k - 1)];
    std::int64_t rhs = k * (k - 1);
    for (std::int64_t i = k; i < n; ++i) rhs += std::min(d[static_cast<std::size_t>(i)], k);
    if (prefix > rhs) return false;
  }
  return true;
}

}  // namespace degenum
