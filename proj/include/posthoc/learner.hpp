#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <vector>

#include "posthoc/rng.hpp"
#include "posthoc/stats.hpp"
#include "posthoc/types.hpp"

namespace posthoc {

// Per-action weight estimates. In PostHocAugmented mode, phi.col(a) is the
// derived post hoc model H * theta.col(a) and `transform` holds the H used.
struct LearnerModel {
  Eigen::MatrixXd theta;      // d_c x K
  Eigen::MatrixXd phi;        // d_p x K, augmented mode only
  Eigen::MatrixXd transform;  // d_p x d_c, augmented mode only
  LearnerMode mode = LearnerMode::ContextOnly;
};

namespace diagnostics {
// Count of LCB width radicands clamped at zero (numerical underflow).
extern std::atomic<long> lcb_clamped;
}  // namespace diagnostics

// theta_a = (CtC_a)^-1 CtL_a
Eigen::VectorXd fit_context_only(const SufficientStats& stats, int a);

// H = (PtP)^-1 (CtP)^T
Eigen::MatrixXd transform_matrix(const SufficientStats& stats);

// theta_a = [CtC_a + H^T PtP_a H]^-1 [CtL_a + H^T PtL_a]
Eigen::VectorXd fit_posthoc_augmented(const SufficientStats& stats, int a, const Eigen::MatrixXd& transform);
Eigen::VectorXd fit_posthoc_augmented(const SufficientStats& stats, int a);

// ContextOnly: (CtC_a)^-1. PostHocAugmented: 2 [CtC_a + H^T PtP_a H]^-1.
Eigen::MatrixXd covariance(const SufficientStats& stats, int a, LearnerMode mode);

// theta^T c - alpha * sqrt(c^T Sigma c); negative radicands clamp to zero.
double lcb(const Eigen::VectorXd& theta, const Eigen::MatrixXd& sigma, const Eigen::VectorXd& c, double alpha);

// Fits all K actions (and the derived phi in augmented mode).
LearnerModel fit_all(const SufficientStats& stats, LearnerMode mode);

// Argmin over actions of the lower confidence bound; ties go to the lowest
// action index.
int select_action(const LearnerModel& model, const SufficientStats& stats, const Eigen::VectorXd& c,
                  const BanditConfig& config);

int select_uniform(Rng& rng, int num_actions);

// Single-writer bandit loop state: accumulates interactions, refits after
// every observation, selects with LinUCB. Caches one Cholesky factor per
// action per refit so selection and fitting share the factorization.
class BanditLearner {
 public:
  BanditLearner(const BanditConfig& config, LearnerMode mode);

  void observe(const Interaction& x);
  int select(const Eigen::VectorXd& c);
  const LearnerModel& model();
  const SufficientStats& stats() const { return stats_; }
  LearnerMode mode() const { return mode_; }

 private:
  void refit();

  BanditConfig config_;
  LearnerMode mode_;
  SufficientStats stats_;
  LearnerModel model_;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors_;
  std::vector<bool> action_dirty_;  // context-only refits touch only changed actions
  bool dirty_ = true;
};

}  // namespace posthoc
