#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace degenum {

/// Outcome of one acceptance criterion. `measured` and `threshold` are on
/// the scale named in `detail`; `passed` never depends on anything else.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

enum class Suite {
  Small,  ///< complementation, contour quadrature and the dense-count trend
  Full,   ///< criteria 1-10
};

struct ValidationOptions {
  std::uint64_t seed = 20240601;
  int threads = 1;
  std::function<void(const CriterionResult&)> on_result;  ///< called as each criterion finishes
};

/// Criterion ids run by the suite, in order.
std::vector<int> suite_criteria(Suite suite);

/// Runs one criterion (1-10). Throws std::out_of_range for other ids.
CriterionResult run_criterion(int id, const ValidationOptions& options = {});

std::vector<CriterionResult> run_acceptance(Suite suite, const ValidationOptions& options = {});

}  // namespace degenum
