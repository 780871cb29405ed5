#include <doctest.h>

#include "oracles.hpp"
#include "posthoc/evaluate.hpp"
#include "posthoc/rng.hpp"

using namespace posthoc;

TEST_CASE("cumulative regret and loss on a hand-worked trajectory") {
  Trajectory traj;
  traj.record(1.0, 0.5);
  traj.record(0.5, 0.5);
  traj.record(2.0, 1.0);
  const auto regret = cumulative_regret(traj);
  REQUIRE(regret.size() == 3);
  CHECK(regret[0] == doctest::Approx(0.5));
  CHECK(regret[1] == doctest::Approx(0.5));
  CHECK(regret[2] == doctest::Approx(1.5));
  const auto loss = cumulative_loss(traj);
  CHECK(loss[2] == doctest::Approx(3.5));
}

TEST_CASE("an oracle policy accumulates zero regret") {
  Trajectory traj;
  for (int t = 0; t < 10; ++t) traj.record(0.25 * t, 0.25 * t);
  for (double r : cumulative_regret(traj)) CHECK(r == doctest::Approx(0.0));
}

TEST_CASE("regret needs the best-loss channel") {
  Trajectory traj;
  traj.incurred_loss = {1.0, 2.0};
  CHECK_THROWS_AS(cumulative_regret(traj), std::invalid_argument);
  CHECK(cumulative_loss(traj).back() == doctest::Approx(3.0));
}

TEST_CASE("random trajectory regret equals the direct per-step sum") {
  Rng rng(51);
  Trajectory traj;
  double direct = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double best = rng.uniform();
    const double incurred = best + rng.uniform();
    traj.record(incurred, best);
    direct += incurred - best;
  }
  CHECK(cumulative_regret(traj).back() == doctest::Approx(direct));
}

TEST_CASE("best fixed action regret on a small instance") {
  std::vector<Eigen::VectorXd> losses{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
  const std::vector<double> incurred{1.0, 1.0};
  // Best fixed arm incurs total 1 either way; the agent incurred 2.
  CHECK(best_fixed_action_regret(incurred, losses) == doctest::Approx(1.0));
}

TEST_CASE("test_mse trivial and randomized") {
  Eigen::MatrixXd weights = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd contexts(2, 2);
  contexts << 1.0, 0.0, 0.0, 1.0;
  Eigen::MatrixXd losses(2, 2);
  losses << 1.0, 0.0, 0.0, 1.0;
  CHECK(test_mse(weights, contexts, losses) == doctest::Approx(0.0));
  losses(0, 1) = 2.0;
  CHECK(test_mse(weights, contexts, losses) == doctest::Approx(2.0));  // 4 / 2 rows

  Rng rng(53);
  Eigen::MatrixXd w(4, 3), c(20, 4), l(20, 3);
  for (int i = 0; i < w.size(); ++i) w(i / 3, i % 3) = rng.gaussian();
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 4; ++j) c(i, j) = rng.gaussian();
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 3; ++j) l(i, j) = rng.gaussian();
  CHECK(std::abs(test_mse(w, c, l) - oracles::mse_reference(w, c, l)) < 1e-12);
}

TEST_CASE("test_mse rejects empty or mismatched inputs") {
  Eigen::MatrixXd weights = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(test_mse(weights, Eigen::MatrixXd(0, 2), Eigen::MatrixXd(0, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(test_mse(weights, Eigen::MatrixXd::Ones(3, 2), Eigen::MatrixXd::Ones(4, 2)),
                  std::invalid_argument);
}

TEST_CASE("greedy_test_loss picks the predicted argmin") {
  // Two actions; weights predict action 0 cheap on the first row and action 1
  // cheap on the second.
  Eigen::MatrixXd weights(1, 2);
  weights << 1.0, -1.0;
  Eigen::MatrixXd contexts(2, 1);
  contexts << -1.0, 1.0;
  Eigen::MatrixXd losses(2, 2);
  losses << 0.0, 1.0,   // predicted argmin 0, true loss 0
      1.0, 0.25;        // predicted argmin 1, true loss 0.25
  CHECK(greedy_test_loss(weights, contexts, losses) == doctest::Approx(0.125));
}

TEST_CASE("aggregate means and standard errors") {
  const std::vector<std::vector<double>> curves{{1.0, 2.0}, {3.0, 6.0}};
  const auto agg = aggregate(curves);
  REQUIRE(agg.mean.size() == 2);
  CHECK(agg.mean[0] == doctest::Approx(2.0));
  CHECK(agg.mean[1] == doctest::Approx(4.0));
  // Sample stddev {1,3} = sqrt(2); stderr = sqrt(2)/sqrt(2) = 1.
  CHECK(agg.stderr_[0] == doctest::Approx(1.0));
  CHECK(agg.stderr_[1] == doctest::Approx(2.0));
  const auto single = aggregate({{5.0}});
  CHECK(single.mean[0] == doctest::Approx(5.0));
  CHECK(single.stderr_[0] == doctest::Approx(0.0));
}

TEST_CASE("bootstrap CI collapses for constant differences") {
  std::vector<std::vector<double>> a, b;
  Rng rng(57);
  for (int i = 0; i < 12; ++i) {
    const double base = rng.uniform();
    a.push_back({base + 1.0});
    b.push_back({base});
  }
  const auto ci = bootstrap_ci_final_diff(a, b, 2000, 3);
  CHECK(ci.lo == doctest::Approx(1.0));
  CHECK(ci.hi == doctest::Approx(1.0));

  const auto zero = bootstrap_ci_final_diff(a, a, 2000, 3);
  CHECK(zero.lo == doctest::Approx(0.0));
  CHECK(zero.hi == doctest::Approx(0.0));
}

TEST_CASE("bootstrap CI brackets a noisy positive difference") {
  std::vector<std::vector<double>> a, b;
  Rng rng(59);
  for (int i = 0; i < 40; ++i) {
    const double base = rng.gaussian();
    a.push_back({base + 2.0 + 0.1 * rng.gaussian()});
    b.push_back({base});
  }
  const auto ci = bootstrap_ci_final_diff(a, b, 4000, 7);
  CHECK(ci.lo > 1.8);
  CHECK(ci.hi < 2.2);
  CHECK(ci.lo < ci.hi);
}
