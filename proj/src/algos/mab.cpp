#include "qbandit/algos/mab.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qbandit/qest/query_count.hpp"

namespace qbandit {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

// Shared doubling-stage loop. `plan(r)` returns the stage length for radius
// r; `estimate(arm, r)` runs the estimator after the stage is paid for.
template <typename PlanFn, typename EstimateFn>
void run_doubling_stages(const MabInstance& instance, std::vector<ArmState>& arms,
                         RegretLedger& ledger, RunRecord& record, PlanFn&& plan,
                         EstimateFn&& estimate) {
  const double best = instance.best_mean();
  std::int64_t stage = 0;

  auto play = [&](std::size_t i, double index_radius, bool init) {
    ArmState& arm = arms[i];
    const std::int64_t length = plan(arm.r);
    const std::int64_t charged = ledger.charge(instance.mean(i), best, length);
    StageEntry entry;
    entry.index = ++stage;
    entry.choice = i;
    entry.accuracy = arm.r;
    entry.index_radius = index_radius;
    entry.length = length;
    entry.charged = charged;
    entry.initialization = init;
    if (charged == length) {
      arm.N = length;
      arm.mu_hat = estimate(i, arm.r);
      entry.estimate = arm.mu_hat;
      entry.completed = true;
    }
    ledger.mark_stage_boundary();
    record.stages.push_back(entry);
    return entry.completed;
  };

  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (!play(i, arms[i].r, true)) return;
  }
  while (!ledger.exhausted()) {
    const std::size_t i = select_optimistic_arm(arms);
    const double index_radius = arms[i].r;
    const ArmState before = arms[i];
    arms[i].r /= 2.0;
    if (!play(i, index_radius, false)) {
      arms[i] = before;
      return;
    }
  }
}

}  // namespace

std::size_t select_optimistic_arm(std::span<const ArmState> arms) {
  if (arms.empty()) throw std::invalid_argument("no arms to select from");
  std::size_t best = 0;
  double best_index = arms[0].mu_hat + arms[0].r;
  for (std::size_t i = 1; i < arms.size(); ++i) {
    const double index = arms[i].mu_hat + arms[i].r;
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

double qucb1_initial_radius(Backend backend) { return backend == Backend::qae ? 0.5 : 1.0; }

RunRecord qucb1_run(const MabInstance& instance, const QucbParams& params, Rng& rng) {
  check_delta(params.delta);
  for (const auto& arm : instance.arms()) arm.require_bounded_value();
  params.estimator.noise.validate();

  RunRecord record;
  record.algorithm = "qucb1";
  record.instance_digest = instance.digest();
  RegretLedger ledger(instance.horizon(), params.checkpoint_stride);

  std::vector<ArmState> arms(instance.arm_count());
  for (auto& a : arms) a.r = qucb1_initial_radius(params.estimator.backend);

  run_doubling_stages(
      instance, arms, ledger, record,
      [&](double r) { return plan_bounded_value(params.estimator, r, params.delta).queries; },
      [&](std::size_t i, double r) {
        const StagePlan plan = plan_bounded_value(params.estimator, r, params.delta);
        return estimate_bounded_value(params.estimator, plan, instance.arm(i), rng);
      });

  finish_record(record, ledger);
  return record;
}

RunRecord qucb2_run(const MabInstance& instance, const Qucb2Params& params, Rng& rng) {
  check_delta(params.delta);
  if (!(params.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  for (const auto& arm : instance.arms()) arm.require_variance_bound(params.sigma);

  RunRecord record;
  record.algorithm = "qucb2";
  record.instance_digest = instance.digest();
  RegretLedger ledger(instance.horizon(), params.checkpoint_stride);

  std::vector<ArmState> arms(instance.arm_count());
  for (auto& a : arms) a.r = 2.0 * params.sigma;

  run_doubling_stages(
      instance, arms, ledger, record,
      [&](double r) { return qmc2_query_count(r, params.delta, params.sigma, params.c2); },
      [&](std::size_t i, double r) {
        return estimate_bounded_variance(instance.mean(i), r, params.delta,
                                         params.force_good_event, rng);
      });

  finish_record(record, ledger);
  return record;
}

RunRecord classical_ucb_run(const MabInstance& instance, const UcbParams& params, Rng& rng) {
  RunRecord record;
  record.algorithm = "ucb";
  record.instance_digest = instance.digest();
  RegretLedger ledger(instance.horizon(), params.checkpoint_stride);

  const std::size_t n = instance.arm_count();
  const double best = instance.best_mean();
  std::vector<double> sums(n, 0.0);
  std::vector<std::int64_t> pulls(n, 0);

  for (std::int64_t t = 1; t <= instance.horizon(); ++t) {
    std::size_t choice = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (pulls[i] == 0) {
        choice = i;
        break;
      }
    }
    if (choice == n) {
      const double lt = std::log(static_cast<double>(t));
      const double explore = 2.0 * std::log(1.0 + static_cast<double>(t) * lt * lt);
      double best_index = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double np = static_cast<double>(pulls[i]);
        const double index = sums[i] / np + std::sqrt(explore / np);
        if (index > best_index) {
          best_index = index;
          choice = i;
        }
      }
    }
    sums[choice] += instance.arm(choice).sample(rng);
    ++pulls[choice];
    ledger.charge(instance.mean(choice), best, 1);
  }

  finish_record(record, ledger);
  return record;
}

}  // namespace qbandit
