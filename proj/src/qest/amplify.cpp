#include "qbandit/qest/amplify.hpp"

#include <cmath>

#include "qbandit/env/numeric.hpp"

namespace qbandit {

int powering_repetitions(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return static_cast<int>(std::max<std::int64_t>(1, ceil_count(5.0 * std::log(1.0 / delta))));
}

double median_failure_probability(double success, int k) {
  if (!(success >= 0.0 && success <= 1.0)) throw std::invalid_argument("success must lie in [0, 1]");
  if (k < 1) throw std::invalid_argument("k must be positive");
  const double q = 1.0 - success;
  const int threshold = (k + 1) / 2;
  CompensatedSum tail;
  for (int j = threshold; j <= k; ++j) {
    const double log_term = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0) +
                            j * std::log(q) + (k - j) * std::log(success);
    tail.add(std::exp(log_term));
  }
  return tail.value();
}

}  // namespace qbandit
