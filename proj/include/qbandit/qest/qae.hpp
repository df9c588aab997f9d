#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qbandit/env/numeric.hpp"

namespace qbandit {

inline constexpr int kDefaultMaxQaeDepth = 24;

struct QaeOutcome {
  std::int64_t y = 0;
  double estimate = 0.0;
  double probability = 0.0;
};

/// Exact measurement law of amplitude estimation with a d-qubit phase
/// register (M = 2^d outcomes).
///
/// The Grover iterate acts on the two-dimensional good/bad subspace with
/// eigenphases +-omega, omega = arcsin(sqrt(a)) / pi. The starting state has
/// equal weight on both eigenvectors, so outcome y has probability
///
///     p_y = (F(omega - y/M) + F(omega + y/M)) / 2,
///     F(x) = sin^2(M pi x) / (M^2 sin^2(pi x)),   F(0) = 1,
///
/// and reports the estimate sin^2(pi y / M). Outcomes y and M - y share an
/// estimate; their merged mass equals F(omega - y/M) + F(omega - (M-y)/M).
class QaeOutcomeDistribution {
 public:
  /// Builds a table from explicit per-outcome probabilities (used by the
  /// noise mixer). Size must be 2^depth; entries non-negative.
  QaeOutcomeDistribution(int depth, double amplitude, std::vector<double> probabilities);

  int depth() const { return depth_; }
  std::int64_t outcome_count() const { return static_cast<std::int64_t>(probabilities_.size()); }
  double amplitude() const { return amplitude_; }

  double probability(std::int64_t y) const { return probabilities_.at(static_cast<std::size_t>(y)); }
  double estimate(std::int64_t y) const;
  const std::vector<double>& probabilities() const { return probabilities_; }
  std::vector<QaeOutcome> outcomes() const;

  /// Estimates with outcomes y and M - y merged, ordered by y in [0, M/2].
  std::vector<std::pair<double, double>> merged() const;

  double total_probability() const;
  /// Mass on outcomes whose estimate is within `radius` of the amplitude.
  double coverage(double radius) const;

  std::int64_t sample_outcome(Rng& rng) const;
  double sample(Rng& rng) const { return estimate(sample_outcome(rng)); }

 private:
  int depth_;
  double amplitude_;
  std::vector<double> probabilities_;
  std::vector<double> cdf_;
};

/// Closed-form outcome table for amplitude `amplitude` at phase depth `depth`.
/// Throws std::invalid_argument for a outside [0,1], depth < 1 or
/// depth > max_depth.
QaeOutcomeDistribution qae_distribution(double amplitude, int depth,
                                        int max_depth = kDefaultMaxQaeDepth);

/// pi / 2^d + pi^2 / 4^d: accuracy reached with probability >= 8/pi^2.
double qae_accuracy(int depth);

/// Smallest d >= 1 with qae_accuracy(d) <= epsilon.
int qae_depth_for_accuracy(double epsilon);

double qae_sample(double amplitude, int depth, Rng& rng);

}  // namespace qbandit
