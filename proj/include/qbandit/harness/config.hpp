#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbandit/algos/estimator.hpp"
#include "qbandit/algos/linear.hpp"
#include "qbandit/qest/noise.hpp"

namespace qbandit {

/// Validation failure; `field()` names the offending config key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ProblemKind { mab, slb };
enum class AlgorithmKind { ucb, qucb1, qucb2, linucb, qlinucb1, qlinucb2 };

/// How delta is chosen: a fixed value, 1/T, or m/T (m the linear stage bound).
enum class DeltaRule { fixed, inverse_horizon, stages_over_horizon };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::ucb;
  std::string label;
  DeltaRule delta_rule = DeltaRule::fixed;
  double delta = 0.01;
  double lambda = 1.0;
  double sigma = 0.5;
  double c1 = 2.0;
  double c2 = 2.0;
  Backend backend = Backend::qae;
  bool tightened = false;
  bool force_good_event = false;
  InnerLogForm inner_log = InnerLogForm::lemma;
  std::optional<NoiseModel> noise;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::mab;
  std::vector<double> means;  // mab

  Eigen::MatrixXd actions;  // slb, one action per row
  Eigen::VectorXd theta_star;
  double L = 1.0;
  double S = 1.0;

  std::int64_t horizon = 1000;
  int repetitions = 100;
  std::uint64_t seed = 0;
  std::int64_t stride = 1000;
  unsigned workers = 0;  // 0: environment override or hardware concurrency
  std::optional<NoiseModel> noise;  // default for algorithms without their own
  std::vector<AlgorithmSpec> algorithms;

  std::string csv_path;
  std::string plot_path;
  bool plot_log_t = false;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

std::string algorithm_name(AlgorithmKind kind);
AlgorithmKind parse_algorithm_kind(const std::string& name);

/// Resolves delta for a horizon (and, for m/T, the linear stage bound).
double resolve_delta(const AlgorithmSpec& spec, const ExperimentConfig& config);

/// Parses a JSON config (comments allowed). Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical fingerprint of the parsed config.
std::string config_digest(const ExperimentConfig& config);

}  // namespace qbandit
