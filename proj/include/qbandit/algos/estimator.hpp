#pragma once

#include <cstdint>

#include "qbandit/env/reward.hpp"
#include "qbandit/qest/noise.hpp"
#include "qbandit/qest/qae.hpp"

namespace qbandit {

enum class Backend {
  qae,        // sampled amplitude estimation, median-amplified
  idealized,  // uniform-in-window draw honouring the (eps, delta) contract
};

/// Largest accuracy handed to a bounded-value estimator, whose contract
/// requires eps < 1.
inline constexpr double kMaxBoundedValueAccuracy = 1.0 - 1e-12;

struct EstimatorConfig {
  Backend backend = Backend::qae;
  double c1 = 2.0;
  /// Idealized backend only: always take the success branch.
  bool force_good_event = false;
  /// QAE backend only.
  NoiseModel noise;
  int max_depth = kDefaultMaxQaeDepth;
};

/// Cost and parameters of one bounded-value estimation call.
struct StagePlan {
  double accuracy = 0.0;
  double delta = 0.0;
  std::int64_t queries = 0;
  int depth = 0;        // QAE only
  int repetitions = 0;  // QAE only
};

/// Plans an estimate of accuracy min(epsilon, 1 - 1e-12) at failure
/// probability delta. QAE: 2^{d_eps} ceil(5 ln(1/delta)) queries;
/// idealized: ceil((C1/eps) ln(1/delta)).
StagePlan plan_bounded_value(const EstimatorConfig& config, double epsilon, double delta);

/// Runs the planned estimator against `reward` and returns the estimate.
double estimate_bounded_value(const EstimatorConfig& config, const StagePlan& plan,
                              const RewardDistribution& reward, Rng& rng);

/// Bounded-variance estimates come from the idealized backend only.
double estimate_bounded_variance(double true_mean, double epsilon, double delta,
                                 bool force_good_event, Rng& rng);

}  // namespace qbandit
