#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

#include "degenum/graph_types.hpp"

namespace degenum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n exceeds the configured exact-count limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// G(d) = 0, so conditional probabilities over the d-space are undefined.
class UndefinedProbability : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ExactCountConfig {
  int max_n_empty = 12;      ///< limit when X has no edges
  int max_n_forbidden = 10;  ///< limit otherwise
  int max_overlap_edges = 12;
};

struct ExactCount {
  BigInt value;
};

/// Number of simple graphs with degrees d sharing no edge with X.
///
/// Vertex-by-vertex backtracking: the chosen vertex is joined to a subset of
/// the remaining allowed vertices, residual degrees drop, and the rest is
/// counted recursively. Subproblems are memoised; once no X-edge remains
/// among the unprocessed vertices the count only depends on the multiset of
/// residual degrees, which is used as the key.
ExactCount exact_count(const DegreeSequence& d, const ForbiddenGraph& x,
                       const ExactCountConfig& config = {});

/// Independent checker: scans all 2^C(n,2) graphs. n <= 7.
BigInt full_enumeration_count(const DegreeSequence& d, const ForbiddenGraph& x);

enum class EventKind { Miss, Hit, Induced };

struct Event {
  EventKind kind = EventKind::Miss;
  int m = 0;  ///< induced subgraph order (Induced only)

  static Event miss() { return {EventKind::Miss, 0}; }
  static Event hit() { return {EventKind::Hit, 0}; }
  static Event induced(int m) { return {EventKind::Induced, m}; }
};

/// miss: G(d,X)/G(d); hit: G(d-x,X)/G(d); induced(m): G(d-x,K_m)/G(d).
/// Throws UndefinedProbability when G(d) = 0 and InvalidInput when the
/// induced support condition fails.
Rational exact_probability(const DegreeSequence& d, const ForbiddenGraph& x, Event event,
                           const ExactCountConfig& config = {});

/// Exact law of |E(G) ∩ E(Y)| for uniform G with degrees d, indexed 0..Y.
std::vector<Rational> exact_overlap_distribution(const DegreeSequence& d, const ForbiddenGraph& y,
                                                 const ExactCountConfig& config = {});

}  // namespace degenum
