#include "qbandit/env/ledger.hpp"

#include <stdexcept>

namespace qbandit {

RegretLedger::RegretLedger(std::int64_t horizon, std::int64_t stride)
    : horizon_(horizon), stride_(stride) {
  if (horizon_ < 1) throw std::invalid_argument("horizon must be a positive integer");
  if (stride_ < 1) throw std::invalid_argument("checkpoint stride must be positive");
}

std::int64_t RegretLedger::charge(double played_mean, double best_mean, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("charge_rounds needs k >= 1");
  const double gap = best_mean - played_mean;
  if (gap < -1e-12) throw std::invalid_argument("played mean exceeds the best mean");
  const double g = gap > 0.0 ? gap : 0.0;

  const std::int64_t n = std::min(k, horizon_ - t_);
  if (n <= 0) return 0;

  // Stride points crossed by this charge, then the horizon if reached.
  const double base = regret_.value();
  const std::int64_t start = t_;
  const std::int64_t end = t_ + n;
  for (std::int64_t c = (start / stride_ + 1) * stride_; c <= end; c += stride_) {
    trajectory_.push_back({c, base + g * static_cast<double>(c - start), false});
  }
  if (end == horizon_ && (trajectory_.empty() || trajectory_.back().t != end)) {
    trajectory_.push_back({end, base + g * static_cast<double>(n), false});
  }

  regret_.add(g * static_cast<double>(n));
  t_ = end;
  if (!charges_.empty() && charges_.back().gap == g) {
    charges_.back().rounds += n;
  } else {
    charges_.push_back({n, g});
  }
  // Keep the last checkpoint consistent with the compensated total.
  if (!trajectory_.empty() && trajectory_.back().t == t_) {
    trajectory_.back().cumulative_regret = regret_.value();
  }
  return n;
}

void RegretLedger::mark_stage_boundary() {
  if (!trajectory_.empty() && trajectory_.back().t == t_) {
    trajectory_.back().stage_boundary = true;
    return;
  }
  trajectory_.push_back({t_, regret_.value(), true});
}

double RegretLedger::replay() const {
  CompensatedSum total;
  for (const auto& c : charges_) total.add(c.gap * static_cast<double>(c.rounds));
  return total.value();
}

std::int64_t charge_rounds(RegretLedger& ledger, double played_mean, double best_mean,
                           std::int64_t k) {
  return ledger.charge(played_mean, best_mean, k);
}

}  // namespace qbandit
