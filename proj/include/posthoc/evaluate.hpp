#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "posthoc/learner.hpp"
#include "posthoc/types.hpp"

namespace posthoc {

// Per-step record of one trial.
struct Trajectory {
  std::vector<double> incurred_loss;
  std::vector<double> best_loss;  // min over actions; empty when only bandit feedback exists
  std::uint64_t seed = 0;
  LearnerMode mode = LearnerMode::ContextOnly;

  void record(double incurred, double best) {
    incurred_loss.push_back(incurred);
    best_loss.push_back(best);
  }
};

// Running sum of per-step instantaneous regret l_t[a_t] - min_a l_t[a].
std::vector<double> cumulative_regret(const Trajectory& traj);

// Running sum of incurred losses.
std::vector<double> cumulative_loss(const Trajectory& traj);

// Regret against the single best fixed action in hindsight,
// max_a' sum_t (l_t[a_t] - l_t[a']); needs the full per-step loss vectors.
double best_fixed_action_regret(const std::vector<double>& incurred,
                                const std::vector<Eigen::VectorXd>& full_losses);

// (1/N) sum ||theta^T c - l||^2 over (context, full_loss) rows. `weights` is
// d x K, `contexts` N x d, `losses` N x K.
double test_mse(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& contexts,
                const Eigen::MatrixXd& losses);

// Mean test loss of the greedy policy argmin_a theta_a^T c. The labels are
// argmin of each loss row.
double greedy_test_loss(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& contexts,
                        const Eigen::MatrixXd& losses);

struct MeanStderrCurve {
  std::vector<double> mean;
  std::vector<double> stderr_;
};

// Pointwise mean and standard error across equally long curves.
MeanStderrCurve aggregate(const std::vector<std::vector<double>>& curves);

// Pointwise mean difference a - b with a bootstrap confidence interval on the
// final value. Curves are paired by index.
struct BootstrapCi {
  double lo = 0.0;
  double hi = 0.0;
};
BootstrapCi bootstrap_ci_final_diff(const std::vector<std::vector<double>>& a,
                                    const std::vector<std::vector<double>>& b, int resamples,
                                    std::uint64_t seed, double coverage = 0.95);

}  // namespace posthoc
