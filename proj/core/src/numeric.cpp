#include "degenum/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace degenum {

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum acc;
  for (double v : values) acc += v;
  return acc.value();
}

double log_factorial(std::int64_t k) {
  if (k < 0) throw std::domain_error("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_falling_factorial(std::int64_t a, std::int64_t b) {
  if (b < 0) throw std::domain_error("log_falling_factorial: negative length");
  if (b > a) return -std::numeric_limits<double>::infinity();
  return log_factorial(a) - log_factorial(a - b);
}

double xlogx(double x) {
  if (x == 0.0) return 0.0;
  return x * std::log(x);
}

}  // namespace degenum
