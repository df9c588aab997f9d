#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qbandit {

/// Per-run success probability of amplitude estimation, 8 / pi^2.
inline constexpr double kQaeSuccessProbability = 0.81056946913870217;

/// ceil(5 ln(1/delta)) independent repetitions for a 1 - delta median.
int powering_repetitions(double delta);

/// Median of k independent draws; lower median when k is even.
template <typename SampleFn>
double median_amplify(SampleFn&& sample, int k) {
  if (k < 1) throw std::invalid_argument("median_amplify needs k >= 1");
  std::vector<double> draws;
  draws.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) draws.push_back(sample());
  const auto mid = draws.begin() + (k - 1) / 2;
  std::nth_element(draws.begin(), mid, draws.end());
  return *mid;
}

/// Exact probability that at least ceil(k/2) of k independent trials fail
/// when each succeeds with probability `success`. This upper-bounds the
/// chance the (lower) median leaves the accuracy window.
double median_failure_probability(double success, int k);

}  // namespace qbandit
