#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbandit/algos/ridge.hpp"
#include "qbandit/env/numeric.hpp"

using namespace qbandit;

TEST(WeightedRidge, NoRowsGivesPrior) {
  const auto fit = weighted_ridge_solve(Eigen::MatrixXd(0, 3), Eigen::VectorXd(0), Eigen::VectorXd(0), 2.0);
  EXPECT_EQ(fit.theta_hat, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(fit.V, 2.0 * Eigen::MatrixXd::Identity(3, 3));
}

TEST(WeightedRidge, ScalarCase) {
  Eigen::MatrixXd X(1, 3);
  X << 1, 0, 0;
  const auto fit = weighted_ridge_solve(X, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1), 1.0);
  EXPECT_NEAR(fit.theta_hat(0), 0.5, 1e-15);
  EXPECT_EQ(fit.theta_hat(1), 0.0);
  EXPECT_EQ(fit.theta_hat(2), 0.0);
}

TEST(WeightedRidge, MatchesDescentOracle) {
  Rng rng(123);
  Eigen::MatrixXd X(5, 3);
  Eigen::VectorXd w(5), y(5);
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j < 3; ++j) X(k, j) = 2.0 * uniform01(rng) - 1.0;
    w(k) = 0.2 + 3.0 * uniform01(rng);
    y(k) = uniform01(rng);
  }
  const auto fit = weighted_ridge_solve(X, w, y, 0.5);
  EXPECT_LE((fit.theta_hat - oracles::ridge_by_descent(X, w, y, 0.5)).norm(), 1e-6);
  Eigen::MatrixXd V = 0.5 * Eigen::MatrixXd::Identity(3, 3);
  for (int k = 0; k < 5; ++k) V += w(k) * X.row(k).transpose() * X.row(k);
  EXPECT_LE((fit.V - V).norm(), 1e-12);
}

TEST(WeightedRidge, RejectsInvalidInput) {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(2, 2);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
  EXPECT_THROW(weighted_ridge_solve(X, ones, ones, 0.0), std::invalid_argument);
  EXPECT_THROW(weighted_ridge_solve(X, -ones, ones, 1.0), std::invalid_argument);
  EXPECT_THROW(weighted_ridge_solve(X, ones, Eigen::VectorXd::Ones(3), 1.0), std::invalid_argument);
  Eigen::VectorXd bad = ones;
  bad(0) = std::nan("");
  EXPECT_THROW(weighted_ridge_solve(X, ones, bad, 1.0), std::invalid_argument);
}
