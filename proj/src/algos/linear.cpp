#include "qbandit/algos/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbandit/env/numeric.hpp"

namespace qbandit {
namespace {

void check_common(double delta, double lambda) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

// Shared stage loop for the quantum linear algorithms. `plan(eps)` returns
// the stage length, `estimate(i, eps)` the stage-end estimate of x_i . theta*.
template <typename PlanFn, typename EstimateFn>
void run_linear_stages(const SlbInstance& instance, bool tightened,
                       RegretLedger& ledger, RunRecord& record, LinState& state, PlanFn&& plan,
                       EstimateFn&& estimate) {
  const double S = instance.S();
  const double best = instance.best_mean();
  record.coverage.push_back(coverage_check(state, instance.theta_star(), S, tightened));

  std::int64_t stage = 0;
  while (!ledger.exhausted()) {
    const Selection sel = qlinucb_select(state, instance.actions(), S, tightened);
    if (!(sel.epsilon > 0.0)) {
      throw std::runtime_error("selected action has zero V^{-1} norm");
    }
    const std::int64_t length = plan(sel.epsilon);
    const std::int64_t charged = ledger.charge(instance.mean(sel.index), best, length);

    StageEntry entry;
    entry.index = ++stage;
    entry.choice = sel.index;
    entry.accuracy = sel.epsilon;
    entry.index_radius = sel.radius;
    entry.length = length;
    entry.charged = charged;
    if (charged == length) {
      const double y = estimate(sel.index, sel.epsilon);
      state.update(instance.action(sel.index), sel.epsilon, y);
      entry.estimate = y;
      entry.completed = true;
      entry.det_v = state.det_V();
      record.coverage.push_back(coverage_check(state, instance.theta_star(), S, tightened));
    }
    ledger.mark_stage_boundary();
    record.stages.push_back(entry);
    if (!entry.completed) break;
  }
}

}  // namespace

bool Ellipsoid::contains(const Eigen::VectorXd& theta) const {
  const Eigen::VectorXd diff = theta - center;
  return std::sqrt(std::max(0.0, diff.dot(shape * diff))) <= radius;
}

LinState::LinState(Eigen::Index dimension, double lambda)
    : lambda_(lambda),
      V_(lambda * Eigen::MatrixXd::Identity(dimension, dimension)),
      theta_hat_(Eigen::VectorXd::Zero(dimension)) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  chol_.compute(V_);
}

Eigen::MatrixXd LinState::design() const {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(rows_.size()), dimension());
  for (std::size_t k = 0; k < rows_.size(); ++k) X.row(static_cast<Eigen::Index>(k)) = rows_[k].transpose();
  return X;
}

Eigen::VectorXd LinState::weights() const {
  Eigen::VectorXd w(static_cast<Eigen::Index>(epsilons_.size()));
  for (std::size_t k = 0; k < epsilons_.size(); ++k) {
    w(static_cast<Eigen::Index>(k)) = 1.0 / (epsilons_[k] * epsilons_[k]);
  }
  return w;
}

Eigen::VectorXd LinState::response_vector() const {
  return Eigen::Map<const Eigen::VectorXd>(responses_.data(), static_cast<Eigen::Index>(responses_.size()));
}

void LinState::update(const Eigen::VectorXd& x, double epsilon, double y) {
  if (x.size() != dimension()) throw std::invalid_argument("action dimension mismatch");
  if (!(epsilon > 0.0) || !std::isfinite(y)) throw std::invalid_argument("invalid stage estimate");
  const double w = 1.0 / (epsilon * epsilon);
  V_.noalias() += w * x * x.transpose();
  rows_.push_back(x);
  epsilons_.push_back(epsilon);
  responses_.push_back(y);

  chol_.compute(V_);
  if (chol_.info() != Eigen::Success) throw std::runtime_error("V lost positive definiteness");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dimension());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    rhs += (responses_[k] / (epsilons_[k] * epsilons_[k])) * rows_[k];
  }
  theta_hat_ = chol_.solve(rhs);
}

double LinState::det_V() const {
  const auto& L = chol_.matrixLLT();
  double det = 1.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) det *= L(i, i) * L(i, i);
  return det;
}

double LinState::inverse_norm(const Eigen::VectorXd& x) const {
  return chol_.matrixL().solve(x).norm();
}

Eigen::VectorXd LinState::inverse_norms(const Eigen::MatrixXd& actions) const {
  const Eigen::MatrixXd z = chol_.matrixL().solve(actions.transpose());
  return z.colwise().norm().transpose();
}

double LinState::spectral_bound() const {
  if (rows_.empty()) return 0.0;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dimension(), dimension());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    gram.noalias() += rows_[k] * rows_[k].transpose() / (epsilons_[k] * epsilons_[k]);
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, V_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double LinState::trace_bound() const {
  return dimension() - lambda_ * chol_.solve(Eigen::MatrixXd::Identity(dimension(), dimension())).trace();
}

double LinState::radius(double S, bool tightened) const {
  const double s = static_cast<double>(stage());
  const double base = std::sqrt(lambda_) * S;
  if (tightened) return base + std::sqrt(s * std::max(0.0, spectral_bound()));
  return base + std::sqrt(static_cast<double>(dimension()) * s);
}

Ellipsoid LinState::confidence_region(double S, bool tightened) const {
  return Ellipsoid{theta_hat_, V_, radius(S, tightened)};
}

Selection qlinucb_select(const LinState& state, const Eigen::MatrixXd& actions, double S,
                         bool tightened) {
  if (actions.rows() < 1) throw std::invalid_argument("action set is empty");
  if (actions.cols() != state.dimension()) throw std::invalid_argument("action dimension mismatch");

  const double r = state.radius(S, tightened);
  const Eigen::VectorXd norms = state.inverse_norms(actions);
  const Eigen::VectorXd means = actions * state.theta_hat();

  Selection sel;
  sel.radius = r;
  sel.score = means(0) + r * norms(0);
  for (Eigen::Index i = 1; i < actions.rows(); ++i) {
    const double score = means(i) + r * norms(i);
    if (score > sel.score + 1e-12 * std::max(1.0, std::abs(sel.score))) {
      sel.score = score;
      sel.index = static_cast<std::size_t>(i);
    }
  }
  sel.epsilon = norms(static_cast<Eigen::Index>(sel.index));
  return sel;
}

bool coverage_check(const LinState& state, const Eigen::VectorXd& theta_star, double S,
                    bool tightened) {
  return state.confidence_region(S, tightened).contains(theta_star);
}

std::int64_t stage_bound(Eigen::Index d, double L, std::int64_t horizon, double lambda) {
  const double dd = static_cast<double>(d);
  const double t = static_cast<double>(horizon);
  return ceil_count(dd * std::log2(L * L * t * t / (dd * lambda) + 1.0));
}

RunRecord qlinucb1_run(const SlbInstance& instance, const QLinUcbParams& params, Rng& rng,
                       LinState* final_state) {
  check_common(params.delta, params.lambda);
  params.estimator.noise.validate();
  for (std::size_t i = 0; i < instance.action_count(); ++i) instance.reward(i).require_bounded_value();

  RunRecord record;
  record.algorithm = "qlinucb1";
  record.instance_digest = instance.digest();
  RegretLedger ledger(instance.horizon(), params.checkpoint_stride);
  LinState state(instance.dimension(), params.lambda);

  const std::int64_t m = stage_bound(instance.dimension(), instance.L(), instance.horizon(), params.lambda);
  const double stage_delta = params.delta / static_cast<double>(m);

  run_linear_stages(
      instance, params.tightened, ledger, record, state,
      [&](double eps) { return plan_bounded_value(params.estimator, eps, stage_delta).queries; },
      [&](std::size_t i, double eps) {
        const StagePlan plan = plan_bounded_value(params.estimator, eps, stage_delta);
        return estimate_bounded_value(params.estimator, plan, instance.reward(i), rng);
      });

  finish_record(record, ledger);
  if (final_state != nullptr) *final_state = std::move(state);
  return record;
}

std::int64_t qlinucb2_stage_length(double epsilon, double stage_delta, double sigma, double c2,
                                   InnerLogForm form) {
  if (!(epsilon > 0.0) || !(sigma > 0.0)) throw std::invalid_argument("epsilon and sigma must be positive");
  if (!(stage_delta > 0.0 && stage_delta < 1.0)) throw std::invalid_argument("stage delta must lie in (0, 1)");
  const double log_conf = std::log(1.0 / stage_delta);
  const double arg = (form == InnerLogForm::lemma ? 8.0 : 1.0) * sigma / epsilon;
  if (arg <= 2.0) return std::max<std::int64_t>(1, ceil_count(log_conf));
  const double l2 = std::log2(arg);
  const double n = c2 * sigma / epsilon * std::pow(l2, 1.5) * std::log2(l2) * log_conf;
  return std::max<std::int64_t>(1, ceil_count(n));
}

RunRecord qlinucb2_run(const SlbInstance& instance, const QLinUcb2Params& params, Rng& rng,
                       LinState* final_state) {
  check_common(params.delta, params.lambda);
  if (!(params.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(params.lambda > 1.0 / (4.0 * params.sigma * instance.L()))) {
    throw std::invalid_argument("lambda must exceed 1/(4 sigma L) for bounded-variance estimation");
  }
  for (std::size_t i = 0; i < instance.action_count(); ++i) {
    instance.reward(i).require_variance_bound(params.sigma);
  }

  RunRecord record;
  record.algorithm = "qlinucb2";
  record.instance_digest = instance.digest();
  RegretLedger ledger(instance.horizon(), params.checkpoint_stride);
  LinState state(instance.dimension(), params.lambda);

  const std::int64_t m = stage_bound(instance.dimension(), instance.L(), instance.horizon(), params.lambda);
  const double stage_delta = params.delta / static_cast<double>(m);
  // The bounded-variance estimator needs eps < 4 sigma.
  const double max_eps = 4.0 * params.sigma * (1.0 - 1e-12);

  run_linear_stages(
      instance, params.tightened, ledger, record, state,
      [&](double eps) {
        return qlinucb2_stage_length(std::min(eps, max_eps), stage_delta, params.sigma, params.c2,
                                     params.form);
      },
      [&](std::size_t i, double eps) {
        return estimate_bounded_variance(instance.mean(i), std::min(eps, max_eps), stage_delta,
                                         params.force_good_event, rng);
      });

  finish_record(record, ledger);
  if (final_state != nullptr) *final_state = std::move(state);
  return record;
}

LinUcbLearner::LinUcbLearner(const Eigen::MatrixXd& actions, double lambda, double S, double L,
                             double delta)
    : d_(static_cast<int>(actions.cols())),
      k_(static_cast<std::size_t>(actions.rows())),
      lambda_(lambda),
      S_(S),
      L_(L),
      log_inv_delta_(std::log(1.0 / delta)) {
  if (k_ == 0 || d_ < 1) throw std::invalid_argument("action set is empty");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");

  const std::size_t d = static_cast<std::size_t>(d_);
  const std::size_t pairs = d * (d + 1) / 2;
  actions_.resize(k_ * d);
  features_.assign((d + pairs) * k_, 0.0);
  for (std::size_t a = 0; a < k_; ++a) {
    for (std::size_t i = 0; i < d; ++i) {
      const double xi = actions(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
      actions_[a * d + i] = xi;
      features_[i * k_ + a] = xi;
    }
    std::size_t p = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j, ++p) {
        const double prod = actions_[a * d + i] * actions_[a * d + j];
        features_[(d + p) * k_ + a] = (i == j ? 1.0 : 2.0) * prod;
      }
    }
  }
  V_.assign(d * d, 0.0);
  Vinv_.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    V_[i * d + i] = lambda;
    Vinv_[i * d + i] = 1.0 / lambda;
  }
  b_.assign(d, 0.0);
  theta_.assign(d, 0.0);
  quad_coef_.assign(pairs, 0.0);
  mean_buf_.assign(k_, 0.0);
  quad_buf_.assign(k_, 0.0);
  scratch_.assign(d, 0.0);
  refresh_coefficients();
}

void LinUcbLearner::refresh_coefficients() {
  const std::size_t d = static_cast<std::size_t>(d_);
  std::size_t p = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j, ++p) quad_coef_[p] = Vinv_[i * d + j];
  }
}

double LinUcbLearner::radius() const {
  const double d = static_cast<double>(d_);
  const double t = static_cast<double>(observations_);
  return std::sqrt(lambda_) * S_ +
         std::sqrt(2.0 * log_inv_delta_ + d * std::log(1.0 + t * L_ * L_ / (d * lambda_)));
}

std::size_t LinUcbLearner::select() const {
  const std::size_t d = static_cast<std::size_t>(d_);
  const std::size_t pairs = quad_coef_.size();
  const double beta = radius();
  double* mean = mean_buf_.data();
  double* quad = quad_buf_.data();
  std::fill(mean_buf_.begin(), mean_buf_.end(), 0.0);
  std::fill(quad_buf_.begin(), quad_buf_.end(), 0.0);
  for (std::size_t f = 0; f < d; ++f) {
    const double c = theta_[f];
    const double* feat = features_.data() + f * k_;
    for (std::size_t a = 0; a < k_; ++a) mean[a] += c * feat[a];
  }
  for (std::size_t p = 0; p < pairs; ++p) {
    const double c = quad_coef_[p];
    const double* feat = features_.data() + (d + p) * k_;
    for (std::size_t a = 0; a < k_; ++a) quad[a] += c * feat[a];
  }
  for (std::size_t a = 0; a < k_; ++a) mean[a] += beta * std::sqrt(std::max(quad[a], 0.0));

  std::size_t best = 0;
  for (std::size_t a = 1; a < k_; ++a) {
    if (mean[a] > mean[best]) best = a;
  }
  return best;
}

void LinUcbLearner::update(std::size_t action, double reward) {
  const std::size_t d = static_cast<std::size_t>(d_);
  const double* x = actions_.data() + action * d;
  std::vector<double>& u = scratch_;
  double denom = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += Vinv_[i * d + j] * x[j];
    u[i] = s;
    denom += x[i] * s;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      V_[i * d + j] += x[i] * x[j];
      Vinv_[i * d + j] -= u[i] * u[j] / denom;
    }
    b_[i] += reward * x[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += Vinv_[i * d + j] * b_[j];
    theta_[i] = s;
  }
  ++observations_;
  refresh_coefficients();
}

Eigen::MatrixXd LinUcbLearner::V() const {
  Eigen::MatrixXd out(d_, d_);
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) out(i, j) = V_[static_cast<std::size_t>(i * d_ + j)];
  }
  return out;
}

Eigen::VectorXd LinUcbLearner::theta_hat() const {
  return Eigen::Map<const Eigen::VectorXd>(theta_.data(), d_);
}

RunRecord classical_linucb_run(const SlbInstance& instance, const LinUcbParams& params, Rng& rng) {
  check_common(params.delta, params.lambda);
  RunRecord record;
  record.algorithm = "linucb";
  record.instance_digest = instance.digest();
  RegretLedger ledger(instance.horizon(), params.checkpoint_stride);
  LinUcbLearner learner(instance.actions(), params.lambda, instance.S(), instance.L(), params.delta);

  const double best = instance.best_mean();
  for (std::int64_t t = 0; t < instance.horizon(); ++t) {
    const std::size_t a = learner.select();
    learner.update(a, instance.reward(a).sample(rng));
    ledger.charge(instance.mean(a), best, 1);
  }
  finish_record(record, ledger);
  return record;
}

}  // namespace qbandit
