#pragma once

#include "qbandit/env/numeric.hpp"

namespace qbandit {

/// Stand-in estimator that meets Pr(|est - mean| > eps) <= delta exactly:
/// with probability 1 - delta a uniform draw on [mean - eps, mean + eps]
/// clipped to [0, 1], otherwise a uniform draw on [0, 1].
double idealized_qmc_sample(double true_mean, double epsilon, double delta, Rng& rng);

/// The success branch alone (the good event forced).
double idealized_qmc_success_sample(double true_mean, double epsilon, Rng& rng);

}  // namespace qbandit
