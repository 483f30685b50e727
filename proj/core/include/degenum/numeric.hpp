#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>

namespace degenum {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  ComplexCompensatedSum& operator+=(std::complex<double> z) noexcept {
    re_ += z.real();
    im_ += z.imag();
    return *this;
  }
  [[nodiscard]] std::complex<double> value() const noexcept {
    return {re_.value(), im_.value()};
  }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

double compensated_sum(std::span<const double> values) noexcept;

double log_factorial(std::int64_t k);

/// ln C(n, k); -infinity when k < 0 or k > n.
double log_binomial(std::int64_t n, std::int64_t k);

/// ln (a)_b = ln a!/(a-b)!; -infinity when b > a.
double log_falling_factorial(std::int64_t a, std::int64_t b);

/// x ln x with the convention 0 ln 0 = 0.
double xlogx(double x);

}  // namespace degenum
