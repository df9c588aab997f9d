#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace qbandit {

using Rng = std::mt19937_64;

/// Uniform draw on [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Ceiling that ignores floating-point fuzz just above an integer, so that
/// e.g. 2 / 0.1 * ln(e^2) counts as 40 rather than 41.
inline std::int64_t ceil_count(double x) {
  const double slack = 1e-9 * std::max(1.0, std::abs(x));
  return static_cast<std::int64_t>(std::ceil(x - slack));
}

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace qbandit
