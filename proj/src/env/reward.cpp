#include "qbandit/env/reward.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qbandit {

RewardDistribution::RewardDistribution(std::vector<Outcome> support)
    : support_(std::move(support)) {
  if (support_.empty()) {
    throw std::invalid_argument("reward distribution needs a non-empty support");
  }
  CompensatedSum total;
  for (const auto& o : support_) {
    if (!std::isfinite(o.value) || !std::isfinite(o.probability)) {
      throw std::invalid_argument("reward support must be finite");
    }
    if (o.probability < 0.0) {
      throw std::invalid_argument("reward probabilities must be non-negative");
    }
    total.add(o.probability);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "reward probabilities sum to " << total.value() << ", expected 1";
    throw std::invalid_argument(msg.str());
  }

  CompensatedSum mean;
  for (const auto& o : support_) mean.add(o.probability * o.value);
  mean_ = mean.value();
  CompensatedSum var;
  for (const auto& o : support_) {
    const double c = o.value - mean_;
    var.add(o.probability * c * c);
  }
  variance_ = var.value();

  bernoulli_ = support_.size() == 2 && support_[0].value == 0.0 && support_[1].value == 1.0;
}

RewardDistribution RewardDistribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("Bernoulli mean must lie in [0, 1]");
  }
  return RewardDistribution({{0.0, 1.0 - p}, {1.0, p}});
}

bool RewardDistribution::bounded_value() const {
  for (const auto& o : support_) {
    if (o.value < 0.0 || o.value > 1.0) return false;
  }
  return true;
}

void RewardDistribution::require_bounded_value() const {
  if (!bounded_value()) {
    throw std::invalid_argument("reward values must lie in [0, 1] under the bounded-value assumption");
  }
}

void RewardDistribution::require_variance_bound(double sigma) const {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (variance_ > sigma * sigma * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "reward variance " << variance_ << " exceeds sigma^2 = " << sigma * sigma;
    throw std::invalid_argument(msg.str());
  }
}

double RewardDistribution::sample(Rng& rng) const {
  const double u = uniform01(rng);
  if (bernoulli_) return u < support_[1].probability ? 1.0 : 0.0;
  double acc = 0.0;
  for (const auto& o : support_) {
    acc += o.probability;
    if (u < acc) return o.value;
  }
  return support_.back().value;
}

}  // namespace qbandit
