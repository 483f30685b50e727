#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace degenum {

/// Raised when an input violates a domain invariant (bad degree, bad edge,
/// dimension mismatch, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Target degrees d_1..d_n of a simple graph. Vertices are 0-indexed in the
/// API and 1-indexed in every file format.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  /// Throws InvalidInput unless 0 <= d_j <= n-1 and the sum is even.
  explicit DegreeSequence(std::vector<int> degrees);

  /// Returns nullopt instead of throwing.
  static std::optional<DegreeSequence> try_make(std::vector<int> degrees);
  static DegreeSequence regular(int n, int d);

  [[nodiscard]] int n() const noexcept { return static_cast<int>(degrees_.size()); }
  [[nodiscard]] int operator[](int j) const { return degrees_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] std::span<const int> degrees() const noexcept { return degrees_; }
  [[nodiscard]] std::int64_t degree_sum() const noexcept;
  [[nodiscard]] std::int64_t edge_count() const noexcept { return degree_sum() / 2; }
  [[nodiscard]] bool is_regular() const noexcept;
  [[nodiscard]] int max_degree() const noexcept;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<int> degrees_;
};

using Edge = std::pair<int, int>;

/// The graph X whose edges are forbidden (miss) or required (hit). Stored as
/// a sorted list of pairs (j < k) plus a dense adjacency table.
class ForbiddenGraph {
 public:
  ForbiddenGraph() = default;
  explicit ForbiddenGraph(int n) : ForbiddenGraph(n, {}) {}
  /// Throws InvalidInput on loops, out-of-range vertices or repeated pairs.
  ForbiddenGraph(int n, std::vector<Edge> edges);

  static ForbiddenGraph complete(int n, int m);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] std::int64_t edge_count() const noexcept {
    return static_cast<std::int64_t>(edges_.size());
  }
  [[nodiscard]] bool empty() const noexcept { return edges_.empty(); }
  [[nodiscard]] bool has_edge(int j, int k) const {
    return adjacency_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(k)] != 0;
  }
  /// x_j, the number of X-edges at j.
  [[nodiscard]] int row_sum(int j) const { return row_sums_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] std::span<const int> row_sums() const noexcept { return row_sums_; }
  [[nodiscard]] int max_row_sum() const noexcept;
  /// X(j), sorted.
  [[nodiscard]] std::vector<int> neighbors(int j) const;
  /// True when x_j is the same for every vertex.
  [[nodiscard]] bool is_regular() const noexcept;

  /// Copy with vertices renamed j -> perm[j].
  [[nodiscard]] ForbiddenGraph relabeled(std::span<const int> perm) const;
  /// Copy with one more edge.
  [[nodiscard]] ForbiddenGraph with_edge(int j, int k) const;

  friend bool operator==(const ForbiddenGraph& a, const ForbiddenGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<int> row_sums_;
};

/// d - x componentwise; nullopt if some component is negative.
std::optional<DegreeSequence> subtract_row_sums(const DegreeSequence& d, const ForbiddenGraph& x);

/// d'_j = n-1-d_j-x_j; nullopt if some component is negative.
std::optional<DegreeSequence> complement_degrees(const DegreeSequence& d, const ForbiddenGraph& x);

DegreeSequence relabeled(const DegreeSequence& d, std::span<const int> perm);

/// Erdős–Gallai test. Accepts any vector (odd sums and out-of-range entries
/// are simply not graphical).
bool is_graphical(std::span<const int> degrees);

}  // namespace degenum
