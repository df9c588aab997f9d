#include "qbandit/qest/idealized.hpp"

#include <algorithm>

namespace qbandit {

double idealized_qmc_success_sample(double true_mean, double epsilon, Rng& rng) {
  const double lo = std::max(0.0, true_mean - epsilon);
  const double hi = std::min(1.0, true_mean + epsilon);
  return lo + (hi - lo) * uniform01(rng);
}

double idealized_qmc_sample(double true_mean, double epsilon, double delta, Rng& rng) {
  if (uniform01(rng) < delta) return uniform01(rng);
  return idealized_qmc_success_sample(true_mean, epsilon, rng);
}

}  // namespace qbandit
