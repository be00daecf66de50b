#pragma once

#include <cmath>

namespace kitaev_qfi {

/// Neumaier-compensated accumulator.
///
/// Unlike plain Kahan summation this variant also keeps the low-order bits
/// when the incoming term is larger in magnitude than the running sum, which
/// happens whenever the series is not summed from small to large.
class CompensatedSum {
 public:
  CompensatedSum() = default;

  CompensatedSum& operator+=(double term) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace kitaev_qfi
