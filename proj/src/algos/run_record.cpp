#include "qbandit/algos/run_record.hpp"

#include <algorithm>

namespace qbandit {

std::int64_t RunRecord::charged_in_stages() const {
  std::int64_t total = 0;
  for (const auto& s : stages) total += s.charged;
  return total;
}

bool RunRecord::covered_throughout() const {
  return std::all_of(coverage.begin(), coverage.end(), [](bool c) { return c; });
}

void finish_record(RunRecord& record, const RegretLedger& ledger) {
  record.trajectory = ledger.trajectory();
  record.final_regret = ledger.cumulative_regret();
  record.rounds = ledger.t();
}

}  // namespace qbandit
