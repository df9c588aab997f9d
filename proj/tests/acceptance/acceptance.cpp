// Acceptance checks for the simulator. Prints one PASS/FAIL line per
// criterion and exits non-zero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qbandit/algos/linear.hpp"
#include "qbandit/algos/mab.hpp"
#include "qbandit/algos/ridge.hpp"
#include "qbandit/harness/actions.hpp"
#include "qbandit/harness/experiment.hpp"
#include "qbandit/qest/amplify.hpp"
#include "qbandit/qest/qae.hpp"

using namespace qbandit;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kReps = 100;

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

SlbInstance quarter_circle(std::int64_t horizon) {
  return SlbInstance(generate_quarter_circle_actions(50), unit_vector_at(0.35), 1.0, 1.0, horizon);
}

// Slope and coefficient of determination of the least-squares line y = a + b x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean_of(x), my = mean_of(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double b = sxy / sxx;
  return {b, syy > 0 ? sxy * sxy / (sxx * syy) : 1.0};
}

// P[X >= k] for X ~ Binomial(n, p), by direct summation.
long double binomial_upper_tail(int n, int k, long double p) {
  long double total = 0;
  for (int j = k; j <= n; ++j) {
    long double c = 1;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    total += c * std::pow(p, j) * std::pow(1 - p, n - j);
  }
  return total;
}

Verdict qae_distribution_check() {
  double worst_mass = 0.0, worst_cover = 1.0;
  for (int ai = 0; ai <= 20; ++ai) {
    const double a = ai * 0.05;
    for (int d = 2; d <= 12; ++d) {
      const auto dist = qae_distribution(a, d);
      const double radius = kPi / std::ldexp(1.0, d) + kPi * kPi / std::ldexp(1.0, 2 * d);
      double mass = 0, cover = 0;
      for (std::int64_t y = 0; y < dist.outcome_count(); ++y) {
        mass += dist.probability(y);
        if (std::abs(dist.estimate(y) - a) <= radius) cover += dist.probability(y);
      }
      worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
      worst_cover = std::min(worst_cover, cover);
    }
  }
  const bool ok = worst_mass <= 1e-10 && worst_cover >= 8.0 / (kPi * kPi);
  return {ok, "max |sum-1| = " + fmt("%.3g", worst_mass) + ", min coverage = " +
                  fmt("%.6f", worst_cover) + " (need >= " + fmt("%.6f", 8.0 / (kPi * kPi)) + ")"};
}

Verdict powering_check() {
  bool ok = true;
  std::string detail;
  for (double delta : {0.1, 0.01, 0.001}) {
    const int k = static_cast<int>(std::ceil(5.0 * std::log(1.0 / delta)));
    if (powering_repetitions(delta) != k) ok = false;
    const long double fail = binomial_upper_tail(k, (k + 1) / 2, 1.0L - 8.0L / (kPi * kPi));
    ok = ok && fail <= delta;
    detail += "delta " + fmt("%g", delta) + ": k=" + std::to_string(k) + " P=" +
              fmt("%.3g", static_cast<double>(fail)) + "; ";
  }
  return {ok, detail};
}

Verdict determinant_doubling_check() {
  const auto inst = quarter_circle(100000);
  const auto m = stage_bound(2, 1.0, 100000, 1.0);
  double worst = 0.0;
  std::int64_t most_stages = 0;
  for (int seed = 0; seed < kReps; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const auto rec = qlinucb1_run(inst, QLinUcbParams{}, rng);
    double prev = 1.0;  // det(lambda I) with lambda = 1
    for (const auto& st : rec.stages) {
      if (!st.completed) continue;
      worst = std::max(worst, std::abs(st.det_v / (2.0 * prev) - 1.0));
      prev = st.det_v;
    }
    most_stages = std::max<std::int64_t>(most_stages, static_cast<std::int64_t>(rec.stages.size()));
  }
  return {worst <= 1e-9 && most_stages <= m,
          "max relative deviation " + fmt("%.3g", worst) + ", max stages " +
              std::to_string(most_stages) + " <= m = " + std::to_string(m)};
}

Verdict ridge_check() {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5);
    const int s = 1 + static_cast<int>(rng() % 20);
    Eigen::MatrixXd X(s, d);
    Eigen::VectorXd w(s), y(s);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < d; ++j) X(i, j) = 2.0 * uniform01(rng) - 1.0;
      w(i) = 0.1 + 10.0 * uniform01(rng);
      y(i) = uniform01(rng);
    }
    const double lambda = 0.1 + uniform01(rng);
    const auto fit = weighted_ridge_solve(X, w, y, lambda);
    worst = std::max(worst, (fit.theta_hat - oracles::ridge_by_descent(X, w, y, lambda)).norm());
  }
  return {worst <= 1e-6, "max 2-norm difference " + fmt("%.3g", worst)};
}

Verdict coverage_check_runs() {
  const auto inst = quarter_circle(1000000);
  QLinUcbParams p;
  p.delta = 0.05;
  p.estimator.backend = Backend::idealized;
  int covered = 0;
  for (int seed = 0; seed < kReps; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    if (qlinucb1_run(inst, p, rng).covered_throughout()) ++covered;
  }
  const double frac = covered / static_cast<double>(kReps);
  return {frac >= 0.90, "covered in every stage: " + fmt("%.2f", frac) + " of runs (need >= 0.90)"};
}

AggregateResult run_mab(std::vector<double> means, std::int64_t horizon,
                        std::vector<AlgorithmSpec> algorithms) {
  ExperimentConfig c;
  c.problem = ProblemKind::mab;
  c.means = std::move(means);
  c.horizon = horizon;
  c.repetitions = kReps;
  c.stride = horizon;
  c.algorithms = std::move(algorithms);
  return run_experiment(c);
}

AlgorithmSpec spec_of(AlgorithmKind kind, std::string label) {
  AlgorithmSpec s;
  s.kind = kind;
  s.label = std::move(label);
  return s;
}

Verdict two_arm_reproduction() {
  auto q = spec_of(AlgorithmKind::qucb1, "QUCB1");
  q.delta = 0.01;
  const auto wide = run_mab({0.5, 0.49}, 1000000, {spec_of(AlgorithmKind::ucb, "UCB"), q});
  const auto narrow = run_mab({0.5, 0.498}, 1000000, {spec_of(AlgorithmKind::ucb, "UCB"), q});
  const double u1 = mean_of(wide.algorithms[0].finals), q1 = mean_of(wide.algorithms[1].finals);
  const double u2 = mean_of(narrow.algorithms[0].finals), q2 = mean_of(narrow.algorithms[1].finals);
  return {q1 < u1 && q2 < 0.25 * u2,
          "gap 0.01: QUCB1 " + fmt("%.1f", q1) + " vs UCB " + fmt("%.1f", u1) +
              "; gap 0.002: QUCB1 " + fmt("%.1f", q2) + " vs 0.25 x UCB " + fmt("%.1f", 0.25 * u2)};
}

Verdict log_scaling() {
  std::vector<double> log_t, log_r, regret;
  QucbParams p;
  p.checkpoint_stride = 1000000000;
  std::string detail;
  for (std::int64_t T : {10000LL, 100000LL, 1000000LL, 10000000LL}) {
    const auto inst = MabInstance::bernoulli({0.5, 0.49}, T);
    p.delta = 1.0 / static_cast<double>(T);
    std::vector<double> finals;
    for (int seed = 0; seed < kReps; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed));
      finals.push_back(qucb1_run(inst, p, rng).final_regret);
    }
    const double r = mean_of(finals);
    log_t.push_back(std::log(static_cast<double>(T)));
    log_r.push_back(std::log(r));
    regret.push_back(r);
    detail += "R(1e" + std::to_string(static_cast<int>(std::lround(std::log10(T)))) + ")=" +
              fmt("%.1f", r) + " ";
  }
  const auto [beta, r2] = linear_fit(log_t, regret);
  const auto [slope, r2_log] = linear_fit(log_t, log_r);
  (void)beta;
  (void)r2_log;
  detail += "| R^2 vs ln T " + fmt("%.3f", r2) + " (>= 0.9), log-log slope " + fmt("%.3f", slope) +
            " (<= 0.15)";
  return {r2 >= 0.9 && slope <= 0.15, detail};
}

Verdict linear_reproduction() {
  ExperimentConfig c;
  c.problem = ProblemKind::slb;
  c.actions = generate_quarter_circle_actions(50);
  c.theta_star = unit_vector_at(0.35);
  c.horizon = 1000000;
  c.repetitions = kReps;
  c.stride = c.horizon;
  auto lin = spec_of(AlgorithmKind::linucb, "LinUCB");
  lin.delta = 0.05;
  auto q = spec_of(AlgorithmKind::qlinucb1, "QLinUCB1");
  q.delta = 0.05;
  q.tightened = true;
  c.algorithms = {lin, q};
  const auto res = run_experiment(c);
  const double l = mean_of(res.algorithms[0].finals), r = mean_of(res.algorithms[1].finals);
  return {r < l, "QLinUCB1 " + fmt("%.1f", r) + " vs LinUCB " + fmt("%.1f", l)};
}

Verdict noise_study() {
  const std::int64_t T = 100000;
  const auto inst = MabInstance::bernoulli({0.4, 0.5}, T);
  auto finals_at = [&](double err1, double err2) {
    QucbParams p;
    p.delta = 1.0 / static_cast<double>(T);
    p.checkpoint_stride = 1000000000;
    p.estimator.noise.err1 = err1;
    p.estimator.noise.err2 = err2;
    std::vector<double> f;
    for (int seed = 0; seed < kReps; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed));
      f.push_back(qucb1_run(inst, p, rng).final_regret);
    }
    return f;
  };
  const std::vector<double> err2s = {0.0, 0.001, 0.002, 0.005, 0.01};
  std::vector<std::vector<double>> finals;
  std::string detail;
  for (double e : err2s) {
    finals.push_back(finals_at(e / 3.0, e));
    detail += fmt("%g", e) + ":" + fmt("%.0f", mean_of(finals.back())) + " ";
  }
  // Paired by seed: a significant excess of decreases over increases
  // rejects monotonicity (one-sided sign test, alpha 0.05).
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    int up = 0, down = 0;
    for (int r = 0; r < kReps; ++r) {
      if (finals[i + 1][r] > finals[i][r]) ++up;
      if (finals[i + 1][r] < finals[i][r]) ++down;
    }
    const auto p = binomial_upper_tail(up + down, down, 0.5L);
    if (up + down > 0 && p < 0.05L) monotone = false;
    detail += "[" + std::to_string(up) + "+/" + std::to_string(down) + "- p=" +
              fmt("%.3g", static_cast<double>(p)) + "] ";
  }
  const double sycamore = mean_of(finals_at(0.00213, 0.00683));
  detail += "| Sycamore " + fmt("%.0f", sycamore) + " (< 5000)";
  return {monotone && sycamore < 5000.0, detail};
}

Verdict good_event_envelope() {
  const std::vector<std::vector<double>> instances = {
      {0.5, 0.49}, {0.5, 0.498}, {0.9, 0.1}, {0.6, 0.5, 0.4}, {0.8, 0.6, 0.5, 0.2}};
  QucbParams p;
  p.delta = 0.01;
  p.checkpoint_stride = 1000000000;
  p.estimator.backend = Backend::idealized;
  p.estimator.force_good_event = true;
  bool ok = true;
  std::string detail;
  for (const auto& means : instances) {
    const auto inst = MabInstance::bernoulli(means, 1000000);
    const double bound = 8.0 * static_cast<double>(means.size() - 1) * p.estimator.c1 *
                         std::log(1.0 / p.delta);
    double worst = 0.0;
    for (int seed = 0; seed < kReps; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed));
      worst = std::max(worst, qucb1_run(inst, p, rng).final_regret);
    }
    ok = ok && worst <= bound;
    detail += std::to_string(means.size()) + " arms gap " + fmt("%g", means[0] - means[1]) +
              ": max " + fmt("%.1f", worst) + " <= " + fmt("%.1f", bound) + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"1 qae distribution normalised and covered", qae_distribution_check},
      {"2 median amplification failure", powering_check},
      {"3 determinant doubling", determinant_doubling_check},
      {"4 ridge matches iterative minimizer", ridge_check},
      {"5 confidence coverage", coverage_check_runs},
      {"6 two-arm regret vs UCB", two_arm_reproduction},
      {"7 logarithmic regret growth", log_scaling},
      {"8 linear regret vs LinUCB", linear_reproduction},
      {"9 noise study", noise_study},
      {"10 good-event regret envelope", good_event_envelope},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const Verdict o = check();
    if (!o.passed) ++failures;
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
