#pragma once

#include <string>
#include <vector>

namespace qbandit {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant sweep used by `qbandit selftest`.
std::vector<CheckResult> run_selftest();

}  // namespace qbandit
