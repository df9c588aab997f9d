#include "qbandit/env/instance.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qbandit {
namespace {

// FNV-1a over a textual rendering; stable across runs and platforms.
std::string fingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void put(std::ostringstream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf << ';';
}

}  // namespace

MabInstance::MabInstance(std::vector<RewardDistribution> arms, std::int64_t horizon)
    : arms_(std::move(arms)), horizon_(horizon) {
  // A single arm is allowed for degenerate baseline checks; experiment
  // configs demand at least two.
  if (arms_.empty()) throw std::invalid_argument("bandit instance needs at least one arm");
  if (horizon_ < 1) throw std::invalid_argument("horizon must be a positive integer");
  for (std::size_t i = 1; i < arms_.size(); ++i) {
    if (arms_[i].mean() > arms_[best_].mean()) best_ = i;
  }
}

MabInstance MabInstance::bernoulli(const std::vector<double>& means, std::int64_t horizon) {
  std::vector<RewardDistribution> arms;
  arms.reserve(means.size());
  for (double m : means) arms.push_back(RewardDistribution::bernoulli(m));
  return MabInstance(std::move(arms), horizon);
}

std::string MabInstance::digest() const {
  std::ostringstream os;
  os << "mab;" << horizon_ << ';';
  for (const auto& arm : arms_) {
    for (const auto& o : arm.support()) {
      put(os, o.value);
      put(os, o.probability);
    }
    os << '|';
  }
  return fingerprint(os.str());
}

std::size_t best_arm(const MabInstance& instance) { return instance.best(); }

SlbInstance::SlbInstance(Eigen::MatrixXd actions, Eigen::VectorXd theta_star, double L, double S,
                         std::int64_t horizon)
    : actions_(std::move(actions)), theta_star_(std::move(theta_star)), L_(L), S_(S),
      horizon_(horizon) {
  validate_geometry();
  rewards_.reserve(means_.size());
  for (double m : means_) {
    if (m < -1e-12 || m > 1.0 + 1e-12) {
      throw std::invalid_argument("x . theta_star must lie in [0, 1] for Bernoulli rewards");
    }
    rewards_.push_back(RewardDistribution::bernoulli(std::clamp(m, 0.0, 1.0)));
  }
}

SlbInstance::SlbInstance(Eigen::MatrixXd actions, Eigen::VectorXd theta_star, double L, double S,
                         std::int64_t horizon, std::vector<RewardDistribution> rewards)
    : actions_(std::move(actions)), theta_star_(std::move(theta_star)), L_(L), S_(S),
      horizon_(horizon), rewards_(std::move(rewards)) {
  validate_geometry();
  if (rewards_.size() != means_.size()) {
    throw std::invalid_argument("one reward distribution per action is required");
  }
  for (std::size_t i = 0; i < means_.size(); ++i) {
    if (std::abs(rewards_[i].mean() - means_[i]) > 1e-9) {
      throw std::invalid_argument("reward distribution mean must equal x . theta_star");
    }
  }
}

void SlbInstance::validate_geometry() {
  if (actions_.rows() < 1 || actions_.cols() < 1) {
    throw std::invalid_argument("action set must be non-empty");
  }
  if (theta_star_.size() != actions_.cols()) {
    throw std::invalid_argument("theta_star dimension does not match the actions");
  }
  if (!(L_ > 0.0) || !(S_ > 0.0)) throw std::invalid_argument("L and S must be positive");
  if (horizon_ < 1) throw std::invalid_argument("horizon must be a positive integer");
  if (!actions_.allFinite() || !theta_star_.allFinite()) {
    throw std::invalid_argument("actions and theta_star must be finite");
  }
  for (Eigen::Index i = 0; i < actions_.rows(); ++i) {
    if (actions_.row(i).norm() > L_ * (1.0 + 1e-12)) {
      throw std::invalid_argument("action norm exceeds L");
    }
  }
  if (theta_star_.norm() > S_ * (1.0 + 1e-12)) throw std::invalid_argument("theta_star norm exceeds S");

  means_.resize(static_cast<std::size_t>(actions_.rows()));
  for (Eigen::Index i = 0; i < actions_.rows(); ++i) {
    means_[static_cast<std::size_t>(i)] = actions_.row(i).dot(theta_star_);
  }
  best_ = 0;
  for (std::size_t i = 1; i < means_.size(); ++i) {
    if (means_[i] > means_[best_]) best_ = i;
  }
}

std::string SlbInstance::digest() const {
  std::ostringstream os;
  os << "slb;" << horizon_ << ';';
  put(os, L_);
  put(os, S_);
  for (Eigen::Index i = 0; i < theta_star_.size(); ++i) put(os, theta_star_(i));
  for (Eigen::Index i = 0; i < actions_.rows(); ++i) {
    for (Eigen::Index j = 0; j < actions_.cols(); ++j) put(os, actions_(i, j));
  }
  for (const auto& r : rewards_) {
    for (const auto& o : r.support()) {
      put(os, o.value);
      put(os, o.probability);
    }
  }
  return fingerprint(os.str());
}

}  // namespace qbandit
