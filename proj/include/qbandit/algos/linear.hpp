#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qbandit/algos/estimator.hpp"
#include "qbandit/algos/run_record.hpp"
#include "qbandit/env/instance.hpp"

namespace qbandit {

struct Ellipsoid {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  double radius = 0.0;

  /// |theta - center|_shape <= radius.
  bool contains(const Eigen::VectorXd& theta) const;
};

/// Stage-level state of the weighted least-squares estimator.
///
/// After s stages V_s = lambda I + sum_k x_k x_k^T / eps_k^2 and
/// theta_hat_s = V_s^{-1} X^T W Y. V is updated in place by the rank-one
/// term; its Cholesky factor is recomputed after every update.
class LinState {
 public:
  LinState(Eigen::Index dimension, double lambda);

  Eigen::Index dimension() const { return V_.rows(); }
  double lambda() const { return lambda_; }
  std::int64_t stage() const { return static_cast<std::int64_t>(epsilons_.size()); }

  const Eigen::MatrixXd& V() const { return V_; }
  const Eigen::VectorXd& theta_hat() const { return theta_hat_; }
  const std::vector<Eigen::VectorXd>& rows() const { return rows_; }
  const std::vector<double>& epsilons() const { return epsilons_; }
  const std::vector<double>& responses() const { return responses_; }

  /// X (s x d), diag(W) and Y assembled from the history.
  Eigen::MatrixXd design() const;
  Eigen::VectorXd weights() const;
  Eigen::VectorXd response_vector() const;

  /// Appends stage (x, eps, y): V += x x^T / eps^2, then re-solves theta_hat.
  void update(const Eigen::VectorXd& x, double epsilon, double y);

  double det_V() const;
  /// |x|_{V^{-1}}.
  double inverse_norm(const Eigen::VectorXd& x) const;
  /// |x|_{V^{-1}} for every row of `actions`.
  Eigen::VectorXd inverse_norms(const Eigen::MatrixXd& actions) const;

  /// |W^{1/2} X V^{-1} X^T W^{1/2}|_2, the largest eigenvalue of the pencil
  /// (X^T W X, V).
  double spectral_bound() const;
  /// tr(V^{-1} X^T W X) = tr(I - lambda V^{-1}).
  double trace_bound() const;

  /// lambda^{1/2} S + sqrt(d s), or lambda^{1/2} S + sqrt(s * spectral_bound)
  /// when tightened, for the current stage s.
  double radius(double S, bool tightened) const;
  Ellipsoid confidence_region(double S, bool tightened) const;

 private:
  double lambda_;
  Eigen::MatrixXd V_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd theta_hat_;
  std::vector<Eigen::VectorXd> rows_;
  std::vector<double> epsilons_;
  std::vector<double> responses_;
};

struct Selection {
  std::size_t index = 0;
  /// |x_s|_{V_{s-1}^{-1}}, unclamped.
  double epsilon = 0.0;
  double score = 0.0;
  double radius = 0.0;
};

/// Optimistic action over the ellipsoid C_{s-1}: maximises
/// theta_hat . x + r |x|_{V^{-1}} by enumeration. Scores within 1e-12
/// (relative) of the best count as ties and keep the lowest index.
Selection qlinucb_select(const LinState& state, const Eigen::MatrixXd& actions, double S,
                         bool tightened);

/// theta* inside the current confidence ellipsoid.
bool coverage_check(const LinState& state, const Eigen::VectorXd& theta_star, double S,
                    bool tightened);

/// m = ceil(d log2(L^2 T^2 / (d lambda) + 1)), the stage-count ceiling.
std::int64_t stage_bound(Eigen::Index d, double L, std::int64_t horizon, double lambda);

struct QLinUcbParams {
  double delta = 0.05;
  double lambda = 1.0;
  bool tightened = false;
  EstimatorConfig estimator;
  std::int64_t checkpoint_stride = 1000;
};

/// Stage-based linear UCB with bounded-value quantum estimates. Stage s
/// plays x_s for the estimator budget at accuracy eps_s and failure
/// probability delta / m; det(V) doubles every completed stage.
RunRecord qlinucb1_run(const SlbInstance& instance, const QLinUcbParams& params, Rng& rng,
                       LinState* final_state = nullptr);

/// Which argument the bounded-variance stage length feeds its logarithms:
/// 8 sigma / eps as in the bounded-variance query count, or sigma / eps as written in
/// the bounded-variance linear algorithm.
enum class InnerLogForm { lemma, algorithm };

/// (C2 sigma / eps) log2^{3/2}(a) log2(log2 a) ln(1/stage_delta) with
/// a = 8 sigma/eps or sigma/eps. When a <= 2 the log-log factor is not
/// positive and the length falls back to ceil(ln(1/stage_delta)).
std::int64_t qlinucb2_stage_length(double epsilon, double stage_delta, double sigma, double c2,
                                   InnerLogForm form);

struct QLinUcb2Params {
  double delta = 0.05;
  double lambda = 1.0;
  double sigma = 0.5;
  double c2 = 2.0;
  InnerLogForm form = InnerLogForm::lemma;
  bool tightened = false;
  bool force_good_event = false;
  std::int64_t checkpoint_stride = 1000;
};

/// Bounded-variance variant; requires lambda > 1 / (4 sigma L).
RunRecord qlinucb2_run(const SlbInstance& instance, const QLinUcb2Params& params, Rng& rng,
                       LinState* final_state = nullptr);

struct LinUcbParams {
  double delta = 0.05;
  double lambda = 1.0;
  std::int64_t checkpoint_stride = 1000;
};

/// Per-round LinUCB on realized rewards. Keeps V, V^{-1} (Sherman-Morrison)
/// and b = sum r_t x_t in flat storage; scores use precomputed quadratic
/// features of each action so one round costs O(K d^2).
class LinUcbLearner {
 public:
  LinUcbLearner(const Eigen::MatrixXd& actions, double lambda, double S, double L, double delta);

  /// sqrt(lambda) S + sqrt(2 ln(1/delta) + d ln(1 + t L^2 / (d lambda))),
  /// t the number of observations so far.
  double radius() const;
  std::size_t select() const;
  void update(std::size_t action, double reward);

  std::int64_t observations() const { return observations_; }
  Eigen::MatrixXd V() const;
  Eigen::VectorXd theta_hat() const;

 private:
  void refresh_coefficients();

  int d_;
  std::size_t k_;
  double lambda_;
  double S_;
  double L_;
  double log_inv_delta_;
  std::int64_t observations_ = 0;
  std::vector<double> actions_;   // row-major k x d
  std::vector<double> features_;  // feature-major: d linear then d(d+1)/2 quadratic
  std::vector<double> V_;
  std::vector<double> Vinv_;
  std::vector<double> b_;
  std::vector<double> theta_;
  std::vector<double> quad_coef_;
  mutable std::vector<double> mean_buf_;
  mutable std::vector<double> quad_buf_;
  std::vector<double> scratch_;
};

RunRecord classical_linucb_run(const SlbInstance& instance, const LinUcbParams& params, Rng& rng);

}  // namespace qbandit
