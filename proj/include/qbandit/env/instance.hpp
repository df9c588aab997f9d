#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbandit/env/reward.hpp"

namespace qbandit {

class MabInstance {
 public:
  MabInstance(std::vector<RewardDistribution> arms, std::int64_t horizon);

  static MabInstance bernoulli(const std::vector<double>& means, std::int64_t horizon);

  std::size_t arm_count() const { return arms_.size(); }
  const RewardDistribution& arm(std::size_t i) const { return arms_.at(i); }
  const std::vector<RewardDistribution>& arms() const { return arms_; }
  double mean(std::size_t i) const { return arms_.at(i).mean(); }
  std::int64_t horizon() const { return horizon_; }

  std::size_t best() const { return best_; }
  double best_mean() const { return arms_[best_].mean(); }
  double gap(std::size_t i) const { return best_mean() - mean(i); }

  /// Stable hex fingerprint of the arm laws and horizon.
  std::string digest() const;

 private:
  std::vector<RewardDistribution> arms_;
  std::int64_t horizon_;
  std::size_t best_ = 0;
};

/// Index of the arm with the largest mean; lowest index on ties.
std::size_t best_arm(const MabInstance& instance);

/// Finite-action stochastic linear bandit. Actions are the rows of
/// `actions`; the default reward model is Bernoulli(x . theta_star), which
/// requires every mean to lie in [0, 1].
class SlbInstance {
 public:
  SlbInstance(Eigen::MatrixXd actions, Eigen::VectorXd theta_star, double L, double S,
              std::int64_t horizon);
  /// Custom reward laws, one per action, each with mean x . theta_star.
  SlbInstance(Eigen::MatrixXd actions, Eigen::VectorXd theta_star, double L, double S,
              std::int64_t horizon, std::vector<RewardDistribution> rewards);

  Eigen::Index dimension() const { return actions_.cols(); }
  std::size_t action_count() const { return static_cast<std::size_t>(actions_.rows()); }
  const Eigen::MatrixXd& actions() const { return actions_; }
  Eigen::VectorXd action(std::size_t i) const { return actions_.row(static_cast<Eigen::Index>(i)).transpose(); }
  const Eigen::VectorXd& theta_star() const { return theta_star_; }
  double L() const { return L_; }
  double S() const { return S_; }
  std::int64_t horizon() const { return horizon_; }

  double mean(std::size_t i) const { return means_.at(i); }
  const RewardDistribution& reward(std::size_t i) const { return rewards_.at(i); }
  std::size_t best() const { return best_; }
  double best_mean() const { return means_[best_]; }
  double gap(std::size_t i) const { return best_mean() - mean(i); }

  std::string digest() const;

 private:
  void validate_geometry();

  Eigen::MatrixXd actions_;
  Eigen::VectorXd theta_star_;
  double L_;
  double S_;
  std::int64_t horizon_;
  std::vector<double> means_;
  std::vector<RewardDistribution> rewards_;
  std::size_t best_ = 0;
};

}  // namespace qbandit
