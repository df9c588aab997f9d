#pragma once

#include <string>

#include "qbandit/harness/experiment.hpp"

namespace qbandit {

/// Detail rows `algorithm,run_id,t,cumulative_regret`, a blank line, then
/// the summary block `algorithm,t,mean,std`. Numbers use 12 significant
/// digits.
std::string format_csv(const AggregateResult& result);
void emit_csv(const AggregateResult& result, const std::string& path);

/// Rebuilds runs from the detail rows and recomputes the summary.
AggregateResult parse_csv_text(const std::string& text);
AggregateResult parse_csv(const std::string& path);

/// Writes `contents` to `path` via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace qbandit
