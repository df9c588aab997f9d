#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbandit/algos/run_record.hpp"
#include "qbandit/env/instance.hpp"
#include "qbandit/harness/config.hpp"

namespace qbandit {

struct SeriesPoint {
  std::int64_t t = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const SeriesPoint&) const = default;
};

struct AlgorithmResult {
  std::string label;
  std::vector<std::int64_t> checkpoints;
  /// runs[i][j]: cumulative regret of run i at checkpoints[j].
  std::vector<std::vector<double>> runs;
  std::vector<SeriesPoint> series;
  std::vector<double> finals;

  bool operator==(const AlgorithmResult&) const = default;
};

struct AggregateResult {
  std::vector<AlgorithmResult> algorithms;
  std::string config_digest;
  double wall_seconds = 0.0;

  bool empty() const { return algorithms.empty(); }
};

MabInstance build_mab_instance(const ExperimentConfig& config);
SlbInstance build_slb_instance(const ExperimentConfig& config);

/// One seeded run of one configured algorithm.
RunRecord run_single(const ExperimentConfig& config, const AlgorithmSpec& spec, std::uint64_t seed);

/// Keeps the checkpoints at multiples of `stride` and at the horizon.
std::vector<Checkpoint> stride_checkpoints(const std::vector<Checkpoint>& trajectory,
                                           std::int64_t stride, std::int64_t horizon);

/// Fills `series` and `finals` from `runs` (sample standard deviation).
void summarize(AlgorithmResult& result);

/// Worker count: `requested` if non-zero, else QBANDIT_WORKERS, else the
/// hardware concurrency.
unsigned resolve_worker_count(unsigned requested);

/// Runs every algorithm for seeds seed, seed+1, ..., seed+reps-1 across a
/// worker pool, aggregates, and writes the CSV / plot when paths are set.
/// Nothing is written if any run fails.
AggregateResult run_experiment(const ExperimentConfig& config);

}  // namespace qbandit
