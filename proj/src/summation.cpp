#include "tinv/summation.hpp"

#include <limits>

namespace tinv {

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double compensated_mean(std::span<const double> xs) noexcept {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace tinv
