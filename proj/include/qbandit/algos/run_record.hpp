#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qbandit/env/ledger.hpp"

namespace qbandit {

struct StageEntry {
  std::int64_t index = 0;  // 1-based, initialization stages included
  std::size_t choice = 0;  // arm or action index
  double accuracy = 0.0;   // accuracy requested from the estimator
  double index_radius = 0.0;  // confidence radius used when choosing
  std::int64_t length = 0;    // planned rounds
  std::int64_t charged = 0;   // rounds actually played
  double estimate = 0.0;      // 0 when the stage was cut short
  bool completed = false;
  bool initialization = false;
  double det_v = 0.0;  // linear algorithms: det(V_s) after the update

  bool operator==(const StageEntry&) const = default;
};

struct RunRecord {
  std::string algorithm;
  std::string instance_digest;
  std::uint64_t seed = 0;
  std::vector<Checkpoint> trajectory;
  std::vector<StageEntry> stages;
  double final_regret = 0.0;
  std::int64_t rounds = 0;
  /// Linear algorithms, testing only: theta* inside C_s for s = 0, 1, ...
  std::vector<bool> coverage;

  bool operator==(const RunRecord&) const = default;

  std::int64_t charged_in_stages() const;
  bool covered_throughout() const;
};

/// Copies the ledger totals and trajectory into the record.
void finish_record(RunRecord& record, const RegretLedger& ledger);

}  // namespace qbandit
