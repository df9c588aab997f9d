#pragma once

#include <string>

#include "qbandit/harness/experiment.hpp"

namespace qbandit {

struct PlotOptions {
  bool log_t = false;
  std::string title = "Cumulative regret";
  int width = 800;
  int height = 500;
};

/// Mean regret against t for every algorithm with a shaded +-1 std band,
/// as standalone SVG. Output depends only on the inputs.
std::string render_svg(const AggregateResult& result, const PlotOptions& options = {});
void emit_plot(const AggregateResult& result, const std::string& path,
               const PlotOptions& options = {});

}  // namespace qbandit
