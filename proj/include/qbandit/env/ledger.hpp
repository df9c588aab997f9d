#pragma once

#include <cstdint>
#include <vector>

#include "qbandit/env/numeric.hpp"

namespace qbandit {

struct Checkpoint {
  std::int64_t t = 0;
  double cumulative_regret = 0.0;
  bool stage_boundary = false;

  bool operator==(const Checkpoint&) const = default;
};

/// Run-length entry of the charge log: `rounds` consecutive rounds at `gap`.
struct ChargeEntry {
  std::int64_t rounds = 0;
  double gap = 0.0;
};

/// Round and expected-regret accounting against a fixed horizon.
///
/// Every oracle query consumes one round. Regret is the expected one,
/// best_mean - played_mean per round. Checkpoints are recorded at every
/// multiple of the stride and at the horizon; within a charge the regret is
/// linear in t, so values at stride points are exact.
class RegretLedger {
 public:
  RegretLedger(std::int64_t horizon, std::int64_t stride);

  /// Charges min(k, T - t) rounds and returns how many were charged.
  std::int64_t charge(double played_mean, double best_mean, std::int64_t k);

  /// Adds a checkpoint at the current t flagged as a stage boundary.
  void mark_stage_boundary();

  std::int64_t t() const { return t_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t remaining() const { return horizon_ - t_; }
  bool exhausted() const { return t_ >= horizon_; }
  double cumulative_regret() const { return regret_.value(); }

  const std::vector<Checkpoint>& trajectory() const { return trajectory_; }
  const std::vector<ChargeEntry>& charges() const { return charges_; }

  /// Recomputes the cumulative regret from the charge log.
  double replay() const;

 private:
  std::int64_t horizon_;
  std::int64_t stride_;
  std::int64_t t_ = 0;
  CompensatedSum regret_;
  std::vector<Checkpoint> trajectory_;
  std::vector<ChargeEntry> charges_;
};

std::int64_t charge_rounds(RegretLedger& ledger, double played_mean, double best_mean,
                           std::int64_t k);

}  // namespace qbandit
