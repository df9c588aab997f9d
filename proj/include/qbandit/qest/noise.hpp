#pragma once

#include "qbandit/qest/qae.hpp"

namespace qbandit {

/// Depolarizing noise aggregated over a whole amplitude-estimation circuit.
/// A depth-d circuit makes M = 2^d oracle queries, each compiled to
/// g1_per_query single-qubit and g2_per_query two-qubit gates.
struct NoiseModel {
  double err1 = 0.0;
  double err2 = 0.0;
  double g1_per_query = 3.0;
  double g2_per_query = 2.0;

  void validate() const;
  bool noiseless() const { return err1 == 0.0 && err2 == 0.0; }

  /// 1 - (1 - err1)^{g1 M} (1 - err2)^{g2 M}.
  double mixing_probability(int depth) const;
};

/// (1 - p) dist + p Uniform(M) with p = noise.mixing_probability(depth).
QaeOutcomeDistribution apply_noise(const QaeOutcomeDistribution& dist, const NoiseModel& noise);

/// Mixes the table toward uniform with an explicit probability p in [0, 1].
QaeOutcomeDistribution mix_uniform(const QaeOutcomeDistribution& dist, double p_mix);

}  // namespace qbandit
