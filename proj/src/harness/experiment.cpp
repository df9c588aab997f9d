#include "qbandit/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qbandit/algos/linear.hpp"
#include "qbandit/algos/mab.hpp"
#include "qbandit/harness/csv.hpp"
#include "qbandit/harness/plot.hpp"

namespace qbandit {

MabInstance build_mab_instance(const ExperimentConfig& config) {
  return MabInstance::bernoulli(config.means, config.horizon);
}

SlbInstance build_slb_instance(const ExperimentConfig& config) {
  return SlbInstance(config.actions, config.theta_star, config.L, config.S, config.horizon);
}

namespace {

struct Prepared {
  std::optional<MabInstance> mab;
  std::optional<SlbInstance> slb;
};

Prepared prepare(const ExperimentConfig& config) {
  Prepared p;
  if (config.problem == ProblemKind::mab) {
    p.mab.emplace(build_mab_instance(config));
  } else {
    p.slb.emplace(build_slb_instance(config));
  }
  return p;
}

RunRecord run_prepared(const ExperimentConfig& config, const Prepared& prepared,
                       const AlgorithmSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const double delta = resolve_delta(spec, config);
  EstimatorConfig est;
  est.backend = spec.backend;
  est.c1 = spec.c1;
  est.force_good_event = spec.force_good_event;
  if (spec.noise) {
    est.noise = *spec.noise;
  } else if (config.noise) {
    est.noise = *config.noise;
  }

  RunRecord record;
  switch (spec.kind) {
    case AlgorithmKind::ucb:
      record = classical_ucb_run(*prepared.mab, UcbParams{config.stride}, rng);
      break;
    case AlgorithmKind::qucb1:
      record = qucb1_run(*prepared.mab, QucbParams{delta, est, config.stride}, rng);
      break;
    case AlgorithmKind::qucb2:
      record = qucb2_run(*prepared.mab,
                         Qucb2Params{delta, spec.sigma, spec.c2, spec.force_good_event,
                                     config.stride},
                         rng);
      break;
    case AlgorithmKind::linucb:
      record = classical_linucb_run(*prepared.slb, LinUcbParams{delta, spec.lambda, config.stride},
                                    rng);
      break;
    case AlgorithmKind::qlinucb1:
      record = qlinucb1_run(*prepared.slb,
                            QLinUcbParams{delta, spec.lambda, spec.tightened, est, config.stride},
                            rng);
      break;
    case AlgorithmKind::qlinucb2:
      record = qlinucb2_run(*prepared.slb,
                            QLinUcb2Params{delta, spec.lambda, spec.sigma, spec.c2, spec.inner_log,
                                           spec.tightened, spec.force_good_event, config.stride},
                            rng);
      break;
  }
  record.seed = seed;
  return record;
}

}  // namespace

RunRecord run_single(const ExperimentConfig& config, const AlgorithmSpec& spec,
                     std::uint64_t seed) {
  return run_prepared(config, prepare(config), spec, seed);
}

std::vector<Checkpoint> stride_checkpoints(const std::vector<Checkpoint>& trajectory,
                                           std::int64_t stride, std::int64_t horizon) {
  std::vector<Checkpoint> out;
  for (const auto& c : trajectory) {
    if (c.t <= 0 || (c.t % stride != 0 && c.t != horizon)) continue;
    if (!out.empty() && out.back().t == c.t) {
      out.back() = c;
    } else {
      out.push_back(c);
    }
  }
  for (auto& c : out) c.stage_boundary = false;
  return out;
}

void summarize(AlgorithmResult& result) {
  result.series.clear();
  result.finals.clear();
  if (result.runs.empty()) return;
  const std::size_t n = result.runs.size();
  for (const auto& run : result.runs) {
    if (run.size() != result.checkpoints.size()) {
      throw std::logic_error("run length does not match the checkpoint grid");
    }
    result.finals.push_back(run.empty() ? 0.0 : run.back());
  }
  for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
    CompensatedSum sum;
    double lo = result.runs[0][j];
    double hi = lo;
    for (const auto& run : result.runs) {
      sum.add(run[j]);
      lo = std::min(lo, run[j]);
      hi = std::max(hi, run[j]);
    }
    const double mean = sum.value() / static_cast<double>(n);
    CompensatedSum sq;
    for (const auto& run : result.runs) sq.add((run[j] - mean) * (run[j] - mean));
    const double sd = n > 1 ? std::sqrt(sq.value() / static_cast<double>(n - 1)) : 0.0;
    result.series.push_back({result.checkpoints[j], mean, sd, lo, hi});
  }
}

unsigned resolve_worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QBANDIT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

AggregateResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const Prepared prepared = prepare(config);

  // Expected checkpoint grid: every stride multiple, then T.
  std::vector<std::int64_t> grid;
  for (std::int64_t t = config.stride; t <= config.horizon; t += config.stride) grid.push_back(t);
  if (grid.empty() || grid.back() != config.horizon) grid.push_back(config.horizon);

  const std::size_t n_alg = config.algorithms.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  AggregateResult result;
  result.config_digest = config_digest(config);
  result.algorithms.resize(n_alg);
  for (std::size_t a = 0; a < n_alg; ++a) {
    result.algorithms[a].label = config.algorithms[a].label;
    result.algorithms[a].checkpoints = grid;
    result.algorithms[a].runs.assign(reps, {});
  }

  const std::size_t jobs = n_alg * reps;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t a = job / reps;
      const std::size_t i = job % reps;
      try {
        const RunRecord record =
            run_prepared(config, prepared, config.algorithms[a], config.seed + i);
        const auto points = stride_checkpoints(record.trajectory, config.stride, config.horizon);
        std::vector<double> values;
        values.reserve(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) {
          if (j >= grid.size() || points[j].t != grid[j]) {
            throw std::logic_error("run trajectory misses a checkpoint");
          }
          values.push_back(points[j].cumulative_regret);
        }
        if (values.size() != grid.size()) {
          throw std::logic_error("run ended before the horizon");
        }
        result.algorithms[a].runs[i] = std::move(values);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_worker_count(config.workers), jobs));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (auto& alg : result.algorithms) summarize(alg);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  // Render everything before touching the filesystem.
  std::string csv_text;
  std::string svg_text;
  if (!config.csv_path.empty()) csv_text = format_csv(result);
  if (!config.plot_path.empty()) {
    PlotOptions options;
    options.log_t = config.plot_log_t;
    svg_text = render_svg(result, options);
  }
  if (!config.csv_path.empty()) write_file_atomic(config.csv_path, csv_text);
  if (!config.plot_path.empty()) write_file_atomic(config.plot_path, svg_text);
  return result;
}

}  // namespace qbandit
