#include "qbandit/algos/ridge.hpp"

#include <cmath>
#include <stdexcept>

namespace qbandit {

RidgeFit weighted_ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& weights,
                              const Eigen::VectorXd& responses, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
  if (weights.size() != X.rows() || responses.size() != X.rows()) {
    throw std::invalid_argument("design, weight and response sizes disagree");
  }
  if (!X.allFinite() || !weights.allFinite() || !responses.allFinite()) {
    throw std::invalid_argument("ridge inputs must be finite");
  }
  if (weights.size() > 0 && !(weights.minCoeff() > 0.0)) {
    throw std::invalid_argument("ridge weights must be positive");
  }

  const Eigen::Index d = X.cols();
  RidgeFit fit;
  fit.V = lambda * Eigen::MatrixXd::Identity(d, d);
  fit.V.noalias() += X.transpose() * weights.asDiagonal() * X;
  const Eigen::VectorXd rhs = X.transpose() * weights.cwiseProduct(responses);
  Eigen::LLT<Eigen::MatrixXd> chol(fit.V);
  if (chol.info() != Eigen::Success) throw std::runtime_error("ridge normal matrix is not positive definite");
  fit.theta_hat = chol.solve(rhs);
  return fit;
}

}  // namespace qbandit
