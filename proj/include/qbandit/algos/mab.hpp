#pragma once

#include <cstdint>
#include <span>

#include "qbandit/algos/estimator.hpp"
#include "qbandit/algos/run_record.hpp"
#include "qbandit/env/instance.hpp"

namespace qbandit {

struct ArmState {
  double mu_hat = 0.0;
  double r = 1.0;
  std::int64_t N = 0;
};

/// argmax_i mu_hat(i) + r_i, lowest index on ties.
std::size_t select_optimistic_arm(std::span<const ArmState> arms);

/// Radius each arm starts from. The idealized backend keeps r = 1; QAE
/// starts at 1/2, the first radius at which its estimate says anything
/// about a [0,1] mean.
double qucb1_initial_radius(Backend backend);

struct QucbParams {
  double delta = 0.01;
  EstimatorConfig estimator;
  std::int64_t checkpoint_stride = 1000;
};

/// Doubling-stage UCB driven by a bounded-value quantum mean estimator.
/// Every arm is estimated once, then each stage picks the optimistic arm,
/// halves its radius and plays it for the estimator's full query budget.
/// A stage the horizon cannot fund is played to the end and discarded.
RunRecord qucb1_run(const MabInstance& instance, const QucbParams& params, Rng& rng);

struct Qucb2Params {
  double delta = 0.01;
  double sigma = 0.5;
  double c2 = 2.0;
  bool force_good_event = false;
  std::int64_t checkpoint_stride = 1000;
};

/// Bounded-variance variant: radii start at 2 sigma and stage lengths follow
/// the bounded-variance query count.
RunRecord qucb2_run(const MabInstance& instance, const Qucb2Params& params, Rng& rng);

struct UcbParams {
  std::int64_t checkpoint_stride = 1000;
};

/// Per-round UCB with index mu_hat + sqrt(2 ln f(t) / N), f(t) = 1 + t ln^2 t.
RunRecord classical_ucb_run(const MabInstance& instance, const UcbParams& params, Rng& rng);

}  // namespace qbandit
