#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "degenum/exact_count.hpp"
#include "degenum/graph_types.hpp"

namespace degenum {

/// Degree sequence fails the Erdős–Gallai test.
class NonGraphical : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Simple labelled graph kept in three synchronised forms: sorted neighbour
/// lists, an indexed edge array (uniform edge choice) and a hash set of pairs.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(int n, const std::vector<Edge>& edges);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(edges_.size()); }
  [[nodiscard]] bool has_edge(int j, int k) const;
  [[nodiscard]] const std::vector<int>& neighbors(int j) const { return adj_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] int degree(int j) const { return static_cast<int>(adj_[static_cast<std::size_t>(j)].size()); }
  [[nodiscard]] std::vector<int> degrees() const;
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Edges sorted lexicographically with j < k.
  [[nodiscard]] std::vector<Edge> sorted_edges() const;

  /// Replaces edges[i] = {a,b}, edges[i2] = {c,d} by {a,c}, {b,d} (or {a,d}, {b,c}
  /// when `cross`). Returns false, leaving the graph unchanged, if a loop or
  /// multi-edge would form.
  bool try_swap(std::size_t i, std::size_t i2, bool cross);

 private:
  [[nodiscard]] std::uint64_t key(int j, int k) const;
  void add_adj(int j, int k);
  void remove_adj(int j, int k);

  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> pairs_;
};

/// Havel–Hakimi realisation. Throws NonGraphical if d is not graphical.
LabeledGraph realize(const DegreeSequence& d);

/// One step of the double-edge-swap chain: two distinct edges uniformly, a fair
/// coin for the pairing. Returns whether the swap was accepted.
bool switch_step(LabeledGraph& g, std::mt19937_64& rng);

/// Whether g satisfies the event for the fixed graph x.
bool event_holds(const LabeledGraph& g, const ForbiddenGraph& x, Event event);

struct SamplerConfig {
  std::int64_t samples = 10000;
  std::int64_t burn_in = -1;   ///< < 0: 10 E ln E
  std::int64_t thinning = 0;   ///< <= 0: E
  std::uint64_t seed = 20240601;
  int chains = 4;              ///< independent chains; fixed for reproducibility
  int batches_per_chain = 25;
  int threads = 1;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< from batch means
  std::int64_t samples = 0;
  std::int64_t burn_in = 0;
  std::int64_t thinning = 0;
  std::uint64_t seed = 0;
  std::int64_t hits = 0;
  double acceptance = 0.0;  ///< fraction of accepted swaps after burn-in
};

/// Frequency of `event` over thinned states of the switch chain. Chain c
/// uses seed splitmix64(seed + c) and starts from realize(d).
MCEstimate estimate_probability(const DegreeSequence& d, const ForbiddenGraph& x, Event event,
                                const SamplerConfig& config = {});

/// Thinned states of a single chain, for inspection and dumps.
std::vector<LabeledGraph> sample_graphs(const DegreeSequence& d, std::int64_t count, std::int64_t burn_in,
                                        std::int64_t thinning, std::uint64_t seed);

}  // namespace degenum
