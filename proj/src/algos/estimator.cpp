#include "qbandit/algos/estimator.hpp"

#include <algorithm>
#include <stdexcept>

#include "qbandit/qest/amplify.hpp"
#include "qbandit/qest/idealized.hpp"
#include "qbandit/qest/query_count.hpp"

namespace qbandit {

StagePlan plan_bounded_value(const EstimatorConfig& config, double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("estimator accuracy must be positive");
  StagePlan plan;
  plan.accuracy = std::min(epsilon, kMaxBoundedValueAccuracy);
  plan.delta = delta;
  switch (config.backend) {
    case Backend::qae:
      plan.depth = qae_depth_for_accuracy(plan.accuracy);
      plan.repetitions = powering_repetitions(delta);
      plan.queries = (std::int64_t{1} << plan.depth) * plan.repetitions;
      break;
    case Backend::idealized:
      plan.queries = qmc1_query_count(plan.accuracy, delta, config.c1);
      break;
  }
  return plan;
}

double estimate_bounded_value(const EstimatorConfig& config, const StagePlan& plan,
                              const RewardDistribution& reward, Rng& rng) {
  const double mean = reward.mean();
  if (config.backend == Backend::idealized) {
    if (config.force_good_event) return idealized_qmc_success_sample(mean, plan.accuracy, rng);
    return idealized_qmc_sample(mean, plan.accuracy, plan.delta, rng);
  }
  // Amplitude estimation encodes E[y] for y in [0, 1] as the good-state amplitude.
  const auto dist = apply_noise(
      qae_distribution(std::clamp(mean, 0.0, 1.0), plan.depth, config.max_depth), config.noise);
  return median_amplify([&] { return dist.sample(rng); }, plan.repetitions);
}

double estimate_bounded_variance(double true_mean, double epsilon, double delta,
                                 bool force_good_event, Rng& rng) {
  if (force_good_event) return idealized_qmc_success_sample(true_mean, epsilon, rng);
  return idealized_qmc_sample(true_mean, epsilon, delta, rng);
}

}  // namespace qbandit
