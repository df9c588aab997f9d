#pragma once

#include <Eigen/Dense>

namespace qbandit {

struct RidgeFit {
  Eigen::VectorXd theta_hat;
  Eigen::MatrixXd V;
};

/// Minimizer of sum_k w_k (x_k . theta - y_k)^2 + lambda |theta|^2 with
/// x_k the rows of X. Returns V = lambda I + X^T W X and
/// theta_hat = V^{-1} X^T W Y from a Cholesky solve.
RidgeFit weighted_ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& weights,
                              const Eigen::VectorXd& responses, double lambda);

}  // namespace qbandit
