#pragma once

#include <cmath>
#include <span>

namespace tinv {

// Neumaier-compensated running sum. The result depends only on the sequence
// of add() calls, never on thread scheduling.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

template <class Range, class Fn>
double compensated_sum(const Range& range, Fn&& fn) {
  CompensatedSum acc;
  for (const auto& item : range) acc.add(fn(item));
  return acc.value();
}

// Arithmetic mean via compensated summation; NaN for empty input.
double compensated_mean(std::span<const double> xs) noexcept;

}  // namespace tinv
