#include "qbandit/qest/qae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qbandit {
namespace {

constexpr double kPi = std::numbers::pi;

// Fejer kernel F(x) = sin^2(M pi x) / (M^2 sin^2(pi x)) with x = scaled / M.
// `scaled` = M x is reduced mod 1 before the numerator sine so that large
// M keeps full relative precision.
double fejer(double scaled, double m) {
  const double x = scaled / m;
  const double den = std::sin(kPi * x);
  if (std::abs(den) < 1e-14) return 1.0;
  const double reduced = scaled - std::nearbyint(scaled);
  const double num = std::sin(kPi * reduced);
  return (num * num) / (m * m * den * den);
}

}  // namespace

QaeOutcomeDistribution::QaeOutcomeDistribution(int depth, double amplitude,
                                               std::vector<double> probabilities)
    : depth_(depth), amplitude_(amplitude), probabilities_(std::move(probabilities)) {
  if (depth_ < 1 || depth_ > 62) throw std::invalid_argument("QAE depth out of range");
  if (probabilities_.size() != (std::size_t{1} << depth_)) {
    throw std::invalid_argument("QAE table size must be 2^depth");
  }
  cdf_.resize(probabilities_.size());
  double acc = 0.0;
  for (std::size_t y = 0; y < probabilities_.size(); ++y) {
    const double p = probabilities_[y];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("QAE probabilities must be finite and non-negative");
    }
    acc += p;
    cdf_[y] = acc;
  }
}

double QaeOutcomeDistribution::estimate(std::int64_t y) const {
  const double s = std::sin(kPi * static_cast<double>(y) / static_cast<double>(outcome_count()));
  return s * s;
}

std::vector<QaeOutcome> QaeOutcomeDistribution::outcomes() const {
  std::vector<QaeOutcome> out;
  out.reserve(probabilities_.size());
  for (std::int64_t y = 0; y < outcome_count(); ++y) {
    out.push_back({y, estimate(y), probabilities_[static_cast<std::size_t>(y)]});
  }
  return out;
}

std::vector<std::pair<double, double>> QaeOutcomeDistribution::merged() const {
  const std::int64_t m = outcome_count();
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(m / 2 + 1));
  for (std::int64_t y = 0; y <= m / 2; ++y) {
    double p = probability(y);
    if (y != 0 && y != m - y) p += probability(m - y);
    out.emplace_back(estimate(y), p);
  }
  return out;
}

double QaeOutcomeDistribution::total_probability() const {
  CompensatedSum s;
  for (double p : probabilities_) s.add(p);
  return s.value();
}

double QaeOutcomeDistribution::coverage(double radius) const {
  CompensatedSum s;
  for (std::int64_t y = 0; y < outcome_count(); ++y) {
    if (std::abs(estimate(y) - amplitude_) <= radius) s.add(probability(y));
  }
  return s.value();
}

std::int64_t QaeOutcomeDistribution::sample_outcome(Rng& rng) const {
  const double u = uniform01(rng) * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<std::int64_t>(it - cdf_.begin());
}

QaeOutcomeDistribution qae_distribution(double amplitude, int depth, int max_depth) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw std::invalid_argument("QAE amplitude must lie in [0, 1]");
  }
  if (depth < 1) throw std::invalid_argument("QAE depth must be at least 1");
  if (depth > max_depth) {
    throw std::invalid_argument("QAE depth " + std::to_string(depth) + " exceeds the cap of " +
                                std::to_string(max_depth));
  }
  const std::int64_t count = std::int64_t{1} << depth;
  const double m = static_cast<double>(count);
  const double omega = std::asin(std::sqrt(amplitude)) / kPi;
  const double m_omega = std::ldexp(omega, depth);

  std::vector<double> p(static_cast<std::size_t>(count));
  for (std::int64_t y = 0; y < count; ++y) {
    const double yd = static_cast<double>(y);
    p[static_cast<std::size_t>(y)] = 0.5 * (fejer(m_omega - yd, m) + fejer(m_omega + yd, m));
  }
  return QaeOutcomeDistribution(depth, amplitude, std::move(p));
}

double qae_accuracy(int depth) {
  const double m = std::ldexp(1.0, depth);
  return kPi / m + (kPi * kPi) / (m * m);
}

int qae_depth_for_accuracy(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("QAE target accuracy must lie in (0, 1)");
  }
  int d = 1;
  while (qae_accuracy(d) > epsilon) ++d;
  return d;
}

double qae_sample(double amplitude, int depth, Rng& rng) {
  return qae_distribution(amplitude, depth).sample(rng);
}

}  // namespace qbandit
