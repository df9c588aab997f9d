#include "qbandit/harness/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qbandit/algos/linear.hpp"
#include "qbandit/algos/mab.hpp"
#include "qbandit/algos/ridge.hpp"
#include "qbandit/harness/actions.hpp"
#include "qbandit/harness/csv.hpp"
#include "qbandit/harness/experiment.hpp"
#include "qbandit/qest/amplify.hpp"
#include "qbandit/qest/qae.hpp"

namespace qbandit {

namespace {

CheckResult guarded(const std::string& name, const std::function<std::string()>& body) {
  // body returns an empty string on success, a failure description otherwise.
  try {
    const std::string why = body();
    return {name, why.empty(), why};
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  std::vector<CheckResult> out;

  out.push_back(guarded("qae distribution normalised and concentrated", [] {
    const double floor = 8.0 / (std::numbers::pi * std::numbers::pi);
    for (int d = 2; d <= 10; ++d) {
      for (int i = 0; i <= 20; ++i) {
        const double a = i / 20.0;
        const auto dist = qae_distribution(a, d);
        if (std::abs(dist.total_probability() - 1.0) > 1e-10) return std::string("mass off at a=") + std::to_string(a);
        if (dist.coverage(qae_accuracy(d)) < floor) return std::string("coverage below 8/pi^2 at a=") + std::to_string(a);
      }
    }
    return std::string();
  }));

  out.push_back(guarded("median amplification failure <= delta", [] {
    for (double delta : {0.1, 0.01, 0.001}) {
      const int k = powering_repetitions(delta);
      if (median_failure_probability(kQaeSuccessProbability, k) > delta) {
        return "failure exceeds delta=" + std::to_string(delta);
      }
    }
    return std::string();
  }));

  out.push_back(guarded("ledger replay matches running total", [] {
    RegretLedger ledger(10000, 100);
    Rng rng(7);
    while (!ledger.exhausted()) {
      ledger.charge(0.5 - 0.3 * uniform01(rng), 0.5, 1 + static_cast<std::int64_t>(rng() % 500));
    }
    if (std::abs(ledger.replay() - ledger.cumulative_regret()) > 1e-9) return std::string("replay differs");
    return std::string();
  }));

  out.push_back(guarded("weighted ridge solves its normal equations", [] {
    Rng rng(11);
    Eigen::MatrixXd X(8, 3);
    Eigen::VectorXd w(8), y(8);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 3; ++j) X(i, j) = uniform01(rng) - 0.5;
      w(i) = 0.5 + uniform01(rng);
      y(i) = uniform01(rng);
    }
    const auto fit = weighted_ridge_solve(X, w, y, 0.7);
    const Eigen::VectorXd residual =
        (X.transpose() * w.asDiagonal() * X + 0.7 * Eigen::MatrixXd::Identity(3, 3)) * fit.theta_hat -
        X.transpose() * w.asDiagonal() * y;
    if (residual.norm() > 1e-10) return std::string("normal-equation residual too large");
    return std::string();
  }));

  out.push_back(guarded("linear stages double det(V)", [] {
    const SlbInstance inst(generate_quarter_circle_actions(50), unit_vector_at(0.35), 1.0, 1.0,
                           20000);
    Rng rng(3);
    const auto rec = qlinucb1_run(inst, QLinUcbParams{}, rng);
    double prev = 1.0;  // det(lambda I) with lambda = 1
    for (const auto& s : rec.stages) {
      if (!s.completed) break;
      if (std::abs(s.det_v / prev - 2.0) > 1e-9 * 2.0) return "ratio " + std::to_string(s.det_v / prev);
      prev = s.det_v;
    }
    if (rec.rounds != inst.horizon()) return std::string("horizon not reached");
    return std::string();
  }));

  out.push_back(guarded("runs are deterministic per seed", [] {
    const auto inst = MabInstance::bernoulli({0.5, 0.45, 0.3}, 50000);
    Rng a(42), b(42);
    if (!(qucb1_run(inst, QucbParams{}, a) == qucb1_run(inst, QucbParams{}, b))) {
      return std::string("qucb1 records differ");
    }
    Rng c(42), d(42);
    if (!(classical_ucb_run(inst, UcbParams{}, c) == classical_ucb_run(inst, UcbParams{}, d))) {
      return std::string("ucb records differ");
    }
    return std::string();
  }));

  out.push_back(guarded("csv round trip", [] {
    ExperimentConfig cfg;
    cfg.means = {0.6, 0.5};
    cfg.horizon = 5000;
    cfg.stride = 500;
    cfg.repetitions = 3;
    cfg.workers = 1;
    AlgorithmSpec ucb;
    ucb.label = "ucb";
    AlgorithmSpec q;
    q.kind = AlgorithmKind::qucb1;
    q.label = "qucb1";
    cfg.algorithms = {ucb, q};
    const auto result = run_experiment(cfg);
    const auto back = parse_csv_text(format_csv(result));
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
      const auto& s0 = result.algorithms[a].series;
      const auto& s1 = back.algorithms.at(a).series;
      if (s0.size() != s1.size()) return std::string("series length differs");
      for (std::size_t j = 0; j < s0.size(); ++j) {
        if (std::abs(s0[j].mean - s1[j].mean) > 1e-9 * std::max(1.0, std::abs(s0[j].mean))) {
          return std::string("mean differs after round trip");
        }
      }
    }
    return std::string();
  }));

  return out;
}

}  // namespace qbandit
