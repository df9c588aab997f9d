// Command-line front end: quick inline runs, config-driven experiments,
// plotting from CSV and the built-in self-test.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbandit/harness/actions.hpp"
#include "qbandit/harness/config.hpp"
#include "qbandit/harness/csv.hpp"
#include "qbandit/harness/experiment.hpp"
#include "qbandit/harness/plot.hpp"
#include "qbandit/harness/selftest.hpp"

using namespace qbandit;

namespace {

struct CommonFlags {
  std::int64_t horizon = 100000;
  std::string delta = "";
  int reps = 100;
  std::uint64_t seed = 0;
  std::int64_t stride = 1000;
  std::vector<std::string> algos;
  double err1 = 0.0;
  double err2 = 0.0;
  std::string backend = "qae";
  unsigned workers = 0;
  std::string csv;
  std::string plot;
  bool log_t = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--horizon,-T", f.horizon, "Number of rounds T")->capture_default_str();
  cmd->add_option("--delta", f.delta, "Failure probability: a number, 1/T or m/T");
  cmd->add_option("--reps", f.reps, "Repetitions")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Base seed; run i uses seed + i")->capture_default_str();
  cmd->add_option("--stride", f.stride, "Checkpoint stride")->capture_default_str();
  cmd->add_option("--algo", f.algos, "Algorithm (repeatable)")->delimiter(',');
  cmd->add_option("--noise-err1", f.err1, "Single-qubit depolarizing rate");
  cmd->add_option("--noise-err2", f.err2, "Two-qubit depolarizing rate");
  cmd->add_option("--backend", f.backend, "Bounded-value estimator: qae or idealized")
      ->check(CLI::IsMember({"qae", "idealized"}))
      ->capture_default_str();
  cmd->add_option("--workers", f.workers, "Worker threads (0: automatic)");
  cmd->add_option("--csv", f.csv, "CSV output path");
  cmd->add_option("--plot", f.plot, "SVG output path");
  cmd->add_flag("--log-t", f.log_t, "Log-scale t axis in the plot");
}

void fill_common(const CommonFlags& f, ExperimentConfig& cfg, bool tightened, double lambda) {
  cfg.horizon = f.horizon;
  cfg.repetitions = f.reps;
  cfg.seed = f.seed;
  cfg.stride = f.stride;
  cfg.workers = f.workers;
  cfg.csv_path = f.csv;
  cfg.plot_path = f.plot;
  cfg.plot_log_t = f.log_t;
  if (f.err1 != 0.0 || f.err2 != 0.0) cfg.noise = NoiseModel{f.err1, f.err2};
  for (const auto& name : f.algos) {
    AlgorithmSpec spec;
    spec.kind = parse_algorithm_kind(name);
    spec.label = name;
    spec.backend = f.backend == "idealized" ? Backend::idealized : Backend::qae;
    spec.tightened = tightened;
    spec.lambda = lambda;
    if (cfg.problem == ProblemKind::slb) spec.delta = 0.05;
    if (f.delta == "1/T") {
      spec.delta_rule = DeltaRule::inverse_horizon;
    } else if (f.delta == "m/T") {
      spec.delta_rule = DeltaRule::stages_over_horizon;
    } else if (!f.delta.empty()) {
      std::size_t used = 0;
      spec.delta = std::stod(f.delta, &used);
      if (used != f.delta.size()) throw ConfigError("--delta", "not a number: " + f.delta);
    }
    cfg.algorithms.push_back(spec);
  }
}

void print_summary(const AggregateResult& r) {
  for (const auto& a : r.algorithms) {
    if (a.series.empty()) continue;
    const auto& last = a.series.back();
    std::printf("%-12s T=%lld  mean regret %.6g  std %.6g  min %.6g  max %.6g  (%zu runs)\n",
                a.label.c_str(), static_cast<long long>(last.t), last.mean, last.stddev,
                last.min, last.max, a.runs.size());
  }
  std::printf("config %s  wall %.2fs\n", r.config_digest.c_str(), r.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum bandit regret simulator"};
  app.require_subcommand(1);

  CommonFlags mab_flags;
  std::vector<double> means;
  double gap = -1.0;
  auto* mab = app.add_subcommand("mab", "Multi-armed Bernoulli bandit");
  add_common(mab, mab_flags);
  auto* means_opt = mab->add_option("--means", means, "Arm means")->delimiter(',');
  mab->add_option("--gap", gap, "Two arms with means 0.5 and 0.5 - gap")->excludes(means_opt);

  CommonFlags slb_flags;
  int n_actions = 50;
  double angle = 0.35;
  double lambda = 1.0;
  bool tightened = false;
  auto* slb = app.add_subcommand("slb", "Quarter-circle stochastic linear bandit");
  add_common(slb, slb_flags);
  slb->add_option("--actions", n_actions, "Number of quarter-circle actions")->capture_default_str();
  slb->add_option("--theta-angle", angle, "theta* angle as a multiple of pi")->capture_default_str();
  slb->add_option("--lambda", lambda, "Ridge regularizer")->capture_default_str();
  slb->add_flag("--tightened", tightened, "Use the data-dependent confidence radius");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config,-c", config_path, "Config file")->required();

  std::string plot_in, plot_out;
  bool plot_log = false;
  auto* plot = app.add_subcommand("plot", "Render a regret CSV as SVG");
  plot->add_option("--input,-i", plot_in, "CSV produced by mab/slb/run")->required();
  plot->add_option("--output,-o", plot_out, "SVG path")->required();
  plot->add_flag("--log-t", plot_log, "Log-scale t axis");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mab || *slb) {
      ExperimentConfig cfg;
      if (*mab) {
        cfg.problem = ProblemKind::mab;
        if (gap >= 0.0) {
          cfg.means = {0.5, 0.5 - gap};
        } else if (!means.empty()) {
          cfg.means = means;
        } else {
          cfg.means = {0.5, 0.49};
        }
        if (mab_flags.algos.empty()) mab_flags.algos = {"ucb", "qucb1"};
        fill_common(mab_flags, cfg, false, 1.0);
      } else {
        cfg.problem = ProblemKind::slb;
        if (n_actions < 2) throw ConfigError("--actions", "must be at least 2");
        cfg.actions = generate_quarter_circle_actions(n_actions);
        cfg.theta_star = unit_vector_at(angle);
        if (slb_flags.algos.empty()) slb_flags.algos = {"linucb", "qlinucb1"};
        fill_common(slb_flags, cfg, tightened, lambda);
      }
      print_summary(run_experiment(cfg));
    } else if (*run) {
      print_summary(run_experiment(load_config(config_path)));
    } else if (*plot) {
      PlotOptions options;
      options.log_t = plot_log;
      emit_plot(parse_csv(plot_in), plot_out, options);
    } else if (*selftest) {
      int failures = 0;
      for (const auto& c : run_selftest()) {
        std::printf("%s %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
        failures += c.passed ? 0 : 1;
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
