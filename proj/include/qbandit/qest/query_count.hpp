#pragma once

#include <cstdint>

namespace qbandit {

enum class ValueBound { bounded_value, bounded_variance };

struct EstimatorGuarantee {
  double epsilon = 0.1;
  double delta = 0.1;
  double sigma = 0.0;
  ValueBound mode = ValueBound::bounded_value;

  /// Throws std::invalid_argument unless epsilon, delta in (0,1) and, in
  /// bounded-variance mode, 0 < epsilon < 4 sigma.
  void validate() const;
};

/// ceil((C1 / eps) ln(1/delta)) for the bounded-value estimator.
std::int64_t qmc1_query_count(double epsilon, double delta, double c1);

/// ceil((C2 sigma / eps) log2^{3/2}(8 sigma / eps) log2(log2(8 sigma / eps)) ln(1/delta))
/// for the bounded-variance estimator; requires eps < 4 sigma.
std::int64_t qmc2_query_count(double epsilon, double delta, double sigma, double c2);

/// 2^{d_eps} * ceil(5 ln(1/delta)): amplitude estimation at depth d_eps,
/// median-amplified to confidence 1 - delta.
std::int64_t qae_query_count(double epsilon, double delta);

}  // namespace qbandit
