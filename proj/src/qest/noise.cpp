#include "qbandit/qest/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace qbandit {

void NoiseModel::validate() const {
  if (!(err1 >= 0.0 && err1 < 1.0) || !(err2 >= 0.0 && err2 < 1.0)) {
    throw std::invalid_argument("depolarizing error rates must lie in [0, 1)");
  }
  if (!(g1_per_query >= 0.0) || !(g2_per_query >= 0.0)) {
    throw std::invalid_argument("gate counts per query must be non-negative");
  }
}

double NoiseModel::mixing_probability(int depth) const {
  const double m = std::ldexp(1.0, depth);
  const double log_keep = g1_per_query * m * std::log1p(-err1) + g2_per_query * m * std::log1p(-err2);
  return -std::expm1(log_keep);
}

QaeOutcomeDistribution mix_uniform(const QaeOutcomeDistribution& dist, double p_mix) {
  if (!(p_mix >= 0.0 && p_mix <= 1.0)) throw std::invalid_argument("mixing probability must lie in [0, 1]");
  const double uniform = p_mix / static_cast<double>(dist.outcome_count());
  std::vector<double> p = dist.probabilities();
  for (double& v : p) v = (1.0 - p_mix) * v + uniform;
  return QaeOutcomeDistribution(dist.depth(), dist.amplitude(), std::move(p));
}

QaeOutcomeDistribution apply_noise(const QaeOutcomeDistribution& dist, const NoiseModel& noise) {
  noise.validate();
  if (noise.noiseless()) return dist;
  return mix_uniform(dist, noise.mixing_probability(dist.depth()));
}

}  // namespace qbandit
