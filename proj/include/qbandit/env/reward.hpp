#pragma once

#include <vector>

#include "qbandit/env/numeric.hpp"

namespace qbandit {

struct Outcome {
  double value = 0.0;
  double probability = 0.0;

  bool operator==(const Outcome&) const = default;
};

/// Finite-support reward law standing in for a per-arm quantum oracle.
///
/// Probabilities must be non-negative and sum to one within 1e-12. Values
/// may be arbitrary finite reals; bounded-value algorithms additionally call
/// `require_bounded_value()`, bounded-variance ones `require_variance_bound()`.
class RewardDistribution {
 public:
  explicit RewardDistribution(std::vector<Outcome> support);

  static RewardDistribution bernoulli(double p);

  const std::vector<Outcome>& support() const { return support_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  /// True when every support value lies in [0, 1].
  bool bounded_value() const;
  void require_bounded_value() const;
  void require_variance_bound(double sigma) const;

  double sample(Rng& rng) const;

  bool operator==(const RewardDistribution&) const = default;

 private:
  std::vector<Outcome> support_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  // Set for two-point {0,1} laws so sampling is one comparison.
  bool bernoulli_ = false;
};

}  // namespace qbandit
