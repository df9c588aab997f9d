#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbandit/algos/linear.hpp"
#include "qbandit/algos/ridge.hpp"
#include "qbandit/harness/actions.hpp"
#include "qbandit/qest/query_count.hpp"

using namespace qbandit;

namespace {

SlbInstance quarter_circle(std::int64_t horizon) {
  return SlbInstance(generate_quarter_circle_actions(50), unit_vector_at(0.35), 1.0, 1.0, horizon);
}

// Largest eigenvalue of W^{1/2} X V^{-1} X^T W^{1/2}, formed explicitly.
double spectral_by_gram(const LinState& state) {
  const Eigen::MatrixXd X = state.design();
  const Eigen::VectorXd w = state.weights();
  const Eigen::MatrixXd B = w.cwiseSqrt().asDiagonal() * X;
  const Eigen::MatrixXd G = B * state.V().inverse() * B.transpose();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues().maxCoeff();
}

}  // namespace

TEST(QLinUcbSelect, FirstStagePicksLongestAction) {
  Eigen::MatrixXd actions(3, 2);
  actions << 0.3, 0.1, 0.5, 0.5, 0.0, 0.6;
  const LinState state(2, 2.0);
  const auto sel = qlinucb_select(state, actions, 1.0, false);
  EXPECT_EQ(sel.index, 1u);
  EXPECT_NEAR(sel.epsilon, std::sqrt(0.5) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sel.score, sel.radius * sel.epsilon, 1e-15);
}

TEST(QLinUcbSelect, ScalarUnitAction) {
  Eigen::MatrixXd actions(1, 1);
  actions << 1.0;
  const auto sel = qlinucb_select(LinState(1, 1.0), actions, 1.0, false);
  EXPECT_EQ(sel.index, 0u);
  EXPECT_EQ(sel.epsilon, 1.0);
}

TEST(QLinUcbSelect, QuarterCircleTiesAtFirstStage) {
  const Eigen::MatrixXd actions = generate_quarter_circle_actions(50);
  const LinState state(2, 1.0);
  // Direct enumeration: every index is r * |x| / sqrt(lambda) = 1.
  for (Eigen::Index i = 0; i < actions.rows(); ++i) {
    EXPECT_NEAR(actions.row(i).norm(), 1.0, 1e-15);
  }
  const auto sel = qlinucb_select(state, actions, 1.0, false);
  EXPECT_EQ(sel.index, 0u);
  EXPECT_EQ(sel.epsilon, 1.0);
}

TEST(StageBound, DirectEvaluation) {
  const double direct = 2.0 * std::log2(1e12 / 2.0 + 1.0);
  EXPECT_EQ(stage_bound(2, 1.0, 1000000, 1.0), static_cast<std::int64_t>(std::ceil(direct)));
  EXPECT_EQ(stage_bound(2, 1.0, 1000000, 1.0), 78);
  EXPECT_EQ(stage_bound(3, 2.0, 1000, 0.5),
            static_cast<std::int64_t>(std::ceil(3.0 * std::log2(4.0 * 1e6 / 1.5 + 1.0))));
}

TEST(LinState, UpdateDoublesDeterminantForAnyAction) {
  Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5);
    const double lambda = 0.1 + 2.0 * uniform01(rng);
    LinState state(d, lambda);
    double det = std::pow(lambda, d);
    for (int s = 1; s <= 20; ++s) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x(j) = 2.0 * uniform01(rng) - 1.0;
      state.update(x, state.inverse_norm(x), uniform01(rng));
      EXPECT_NEAR(state.det_V() / det, 2.0, 2e-9);
      det = state.det_V();
      EXPECT_NEAR(det / (std::ldexp(1.0, s) * std::pow(lambda, d)), 1.0, 1e-9);
    }
  }
}

TEST(LinState, StateMatchesHistory) {
  Rng rng(12);
  LinState state(3, 0.7);
  for (int s = 0; s < 15; ++s) {
    Eigen::VectorXd x(3);
    for (int j = 0; j < 3; ++j) x(j) = 2.0 * uniform01(rng) - 1.0;
    state.update(x, state.inverse_norm(x), uniform01(rng));

    Eigen::MatrixXd V = 0.7 * Eigen::MatrixXd::Identity(3, 3);
    for (std::size_t k = 0; k < state.rows().size(); ++k) {
      V += state.rows()[k] * state.rows()[k].transpose() /
           (state.epsilons()[k] * state.epsilons()[k]);
    }
    EXPECT_LE((state.V() - V).norm(), 1e-9 * V.norm());

    const auto fresh = weighted_ridge_solve(state.design(), state.weights(), state.response_vector(), 0.7);
    EXPECT_LE((state.theta_hat() - fresh.theta_hat).norm(), 1e-9);

    const double trace = state.trace_bound();
    EXPECT_NEAR(trace, (state.V().inverse() * state.design().transpose() *
                        state.weights().asDiagonal() * state.design()).trace(), 1e-9);
    EXPECT_LE(trace, 3.0 + 1e-9);
    EXPECT_NEAR(state.spectral_bound(), spectral_by_gram(state), 1e-9);
    EXPECT_LE(state.spectral_bound(), trace + 1e-9);
    EXPECT_LE(state.radius(1.0, true), state.radius(1.0, false) + 1e-12);
  }
}

TEST(LinState, EstimateMatchesDescentOracle) {
  Rng rng(14);
  LinState state(2, 1.0);
  for (int s = 0; s < 6; ++s) {
    Eigen::VectorXd x(2);
    x << uniform01(rng), uniform01(rng);
    state.update(x, state.inverse_norm(x), uniform01(rng));
  }
  const auto oracle = oracles::ridge_by_descent(state.design(), state.weights(), state.response_vector(), 1.0);
  EXPECT_LE((state.theta_hat() - oracle).norm(), 1e-6);
}

TEST(Coverage, InitialRegionAlwaysHoldsTheParameter) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd theta(3);
    for (int j = 0; j < 3; ++j) theta(j) = 2.0 * uniform01(rng) - 1.0;
    const double S = theta.norm() * (1.0 + uniform01(rng));
    EXPECT_TRUE(coverage_check(LinState(3, 0.1 + uniform01(rng)), theta, S, false));
  }
}

TEST(Coverage, ZeroRadiusExcludesOtherPoints) {
  Ellipsoid e{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2), 0.0};
  EXPECT_TRUE(e.contains(Eigen::VectorXd::Zero(2)));
  EXPECT_FALSE(e.contains(Eigen::VectorXd::Ones(2) * 1e-6));
}

TEST(QLinUcb1, StagesDoubleDeterminantAndStayWithinBound) {
  const auto inst = quarter_circle(100000);
  const auto m = stage_bound(2, 1.0, 100000, 1.0);
  for (bool tightened : {false, true}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      QLinUcbParams p;
      p.tightened = tightened;
      LinState final_state(2, 1.0);
      const auto rec = qlinucb1_run(inst, p, rng, &final_state);
      EXPECT_EQ(rec.rounds, 100000);
      EXPECT_EQ(rec.charged_in_stages(), rec.rounds);
      EXPECT_LE(static_cast<std::int64_t>(rec.stages.size()), m);
      std::int64_t s = 0;
      for (const auto& st : rec.stages) {
        if (!st.completed) continue;
        ++s;
        EXPECT_NEAR(st.det_v / std::ldexp(1.0, static_cast<int>(s)), 1.0, 1e-9);
        const double stage_delta = p.delta / static_cast<double>(m);
        EXPECT_EQ(st.length, qae_query_count(std::min(st.accuracy, kMaxBoundedValueAccuracy), stage_delta));
      }
      EXPECT_EQ(final_state.stage(), s);
    }
  }
}

TEST(QLinUcb1, Deterministic) {
  const auto inst = quarter_circle(200000);
  Rng a(5), b(5);
  EXPECT_EQ(qlinucb1_run(inst, QLinUcbParams{}, a), qlinucb1_run(inst, QLinUcbParams{}, b));
}

TEST(QLinUcb1, RejectsInvalidParameters) {
  const auto inst = quarter_circle(1000);
  Rng rng(0);
  QLinUcbParams p;
  p.delta = 1.0;
  EXPECT_THROW(qlinucb1_run(inst, p, rng), std::invalid_argument);
  p.delta = 0.05;
  p.lambda = 0.0;
  EXPECT_THROW(qlinucb1_run(inst, p, rng), std::invalid_argument);
}

TEST(QLinUcb2, RejectsSmallRegularizer) {
  const auto inst = quarter_circle(1000);
  Rng rng(0);
  QLinUcb2Params p;
  p.sigma = 0.5;
  p.lambda = 0.4;
  EXPECT_THROW(qlinucb2_run(inst, p, rng), std::invalid_argument);
  p.lambda = 0.5;
  EXPECT_THROW(qlinucb2_run(inst, p, rng), std::invalid_argument);
  p.lambda = 0.51;
  EXPECT_NO_THROW(qlinucb2_run(inst, p, rng));
}

TEST(QLinUcb2, StageLengthForms) {
  const double sd = 0.001;
  // sigma / eps = 1: the log-log factor is not positive.
  EXPECT_EQ(qlinucb2_stage_length(0.5, sd, 0.5, 2.0, InnerLogForm::algorithm),
            static_cast<std::int64_t>(std::ceil(std::log(1.0 / sd))));
  // 8 sigma / eps = 8 in the lemma form.
  EXPECT_EQ(qlinucb2_stage_length(0.5, sd, 0.5, 2.0, InnerLogForm::lemma),
            static_cast<std::int64_t>(std::ceil(2.0 * std::pow(3.0, 1.5) * std::log2(3.0) * std::log(1.0 / sd))));
  EXPECT_EQ(qlinucb2_stage_length(0.5, sd, 0.5, 2.0, InnerLogForm::lemma),
            qmc2_query_count(0.5, sd, 0.5, 2.0));
  // sigma / eps = 16: log2 16 = 4, log2 log2 16 = 2.
  EXPECT_EQ(qlinucb2_stage_length(0.5 / 16, sd, 0.5, 1.0, InnerLogForm::algorithm),
            static_cast<std::int64_t>(std::ceil(16.0 * 8.0 * 2.0 * std::log(1.0 / sd))));
}

TEST(QLinUcb2, StagesDoubleDeterminant) {
  const auto inst = quarter_circle(100000);
  const auto m = stage_bound(2, 1.0, 100000, 1.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto rec = qlinucb2_run(inst, QLinUcb2Params{}, rng);
    EXPECT_LE(static_cast<std::int64_t>(rec.stages.size()), m);
    std::int64_t s = 0;
    for (const auto& st : rec.stages) {
      if (!st.completed) continue;
      ++s;
      ASSERT_NEAR(st.det_v / std::ldexp(1.0, static_cast<int>(s)), 1.0, 1e-9);
    }
    EXPECT_EQ(rec.rounds, 100000);
  }
}

TEST(LinUcb, SingleScalarActionHasNoRegret) {
  Eigen::MatrixXd actions(1, 1);
  actions << 1.0;
  Eigen::VectorXd theta(1);
  theta << 0.4;
  const SlbInstance inst(actions, theta, 1.0, 1.0, 5000);
  Rng rng(0);
  EXPECT_EQ(classical_linucb_run(inst, LinUcbParams{}, rng).final_regret, 0.0);
}

TEST(LinUcb, LearnerStateMatchesDefinition) {
  const Eigen::MatrixXd actions = generate_quarter_circle_actions(7);
  LinUcbLearner learner(actions, 1.5, 1.0, 1.0, 0.05);
  Eigen::MatrixXd V = 1.5 * Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
  Rng rng(3);
  for (int t = 1; t <= 2000; ++t) {
    const std::size_t a = learner.select();
    const double r = uniform01(rng) < 0.5 ? 1.0 : 0.0;
    learner.update(a, r);
    V += actions.row(static_cast<Eigen::Index>(a)).transpose() * actions.row(static_cast<Eigen::Index>(a));
    b += r * actions.row(static_cast<Eigen::Index>(a)).transpose();
    if (t % 250 == 0) {
      EXPECT_LE((learner.V() - V).norm(), 1e-9 * V.norm());
      EXPECT_LE((learner.theta_hat() - V.ldlt().solve(b)).norm(), 1e-9);
      const double beta = std::sqrt(1.5) +
                          std::sqrt(2.0 * std::log(20.0) + 2.0 * std::log(1.0 + t / (2.0 * 1.5)));
      EXPECT_NEAR(learner.radius(), beta, 1e-12);
    }
  }
  EXPECT_EQ(learner.observations(), 2000);
}

TEST(LinUcb, SelectionMatchesEnumeration) {
  const Eigen::MatrixXd actions = generate_quarter_circle_actions(20);
  LinUcbLearner learner(actions, 1.0, 1.0, 1.0, 0.05);
  Rng rng(9);
  for (int t = 0; t < 500; ++t) {
    const Eigen::MatrixXd V = learner.V();
    const Eigen::VectorXd th = learner.theta_hat();
    const Eigen::MatrixXd Vinv = V.inverse();
    std::size_t best = 0;
    double best_score = -1e300;
    for (Eigen::Index i = 0; i < actions.rows(); ++i) {
      const Eigen::VectorXd x = actions.row(i).transpose();
      const double score = th.dot(x) + learner.radius() * std::sqrt(x.dot(Vinv * x));
      if (score > best_score + 1e-9) {
        best_score = score;
        best = static_cast<std::size_t>(i);
      }
    }
    const std::size_t chosen = learner.select();
    const Eigen::VectorXd xc = actions.row(static_cast<Eigen::Index>(chosen)).transpose();
    EXPECT_NEAR(th.dot(xc) + learner.radius() * std::sqrt(xc.dot(Vinv * xc)), best_score, 1e-9);
    learner.update(chosen, uniform01(rng) < 0.7 ? 1.0 : 0.0);
    (void)best;
  }
}

TEST(LinUcb, MeanRegretCurveIsConcave) {
  const auto inst = quarter_circle(1000000);
  LinUcbParams p;
  p.checkpoint_stride = 100000;
  std::vector<double> mean(10, 0.0);
  const int seeds = 20;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    Rng rng(seed);
    const auto rec = classical_linucb_run(inst, p, rng);
    int k = 0;
    for (const auto& c : rec.trajectory) {
      if (c.t % 100000 == 0) mean[static_cast<std::size_t>(k++)] += c.cumulative_regret / seeds;
    }
    ASSERT_EQ(k, 10);
  }
  double prev_increment = mean[0];
  for (std::size_t k = 1; k < mean.size(); ++k) {
    const double inc = mean[k] - mean[k - 1];
    EXPECT_LE(inc, prev_increment) << "at t=" << (k + 1) * 100000;
    prev_increment = inc;
  }
}
