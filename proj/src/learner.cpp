#include "posthoc/learner.hpp"

#include <cmath>
#include <limits>

namespace posthoc {

namespace diagnostics {
std::atomic<long> lcb_clamped{0};
}  // namespace diagnostics

Eigen::VectorXd fit_context_only(const SufficientStats& stats, int a) {
  return stats.ctc(a).llt().solve(stats.ctl(a));
}

Eigen::MatrixXd transform_matrix(const SufficientStats& stats) {
  return stats.ptp().llt().solve(stats.ctp().transpose());
}

Eigen::VectorXd fit_posthoc_augmented(const SufficientStats& stats, int a, const Eigen::MatrixXd& transform) {
  Eigen::MatrixXd gram = stats.ctc(a);
  gram.noalias() += transform.transpose() * stats.ptp(a) * transform;
  Eigen::VectorXd rhs = stats.ctl(a);
  rhs.noalias() += transform.transpose() * stats.ptl(a);
  return gram.llt().solve(rhs);
}

Eigen::VectorXd fit_posthoc_augmented(const SufficientStats& stats, int a) {
  return fit_posthoc_augmented(stats, a, transform_matrix(stats));
}

Eigen::MatrixXd covariance(const SufficientStats& stats, int a, LearnerMode mode) {
  const int dc = stats.config().context_dim;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dc, dc);
  if (mode == LearnerMode::ContextOnly) return stats.ctc(a).llt().solve(id);
  const Eigen::MatrixXd transform = transform_matrix(stats);
  Eigen::MatrixXd gram = stats.ctc(a);
  gram.noalias() += transform.transpose() * stats.ptp(a) * transform;
  return 2.0 * gram.llt().solve(id);
}

double lcb(const Eigen::VectorXd& theta, const Eigen::MatrixXd& sigma, const Eigen::VectorXd& c, double alpha) {
  double radicand = c.dot(sigma * c);
  if (radicand < 0.0) {
    radicand = 0.0;
    diagnostics::lcb_clamped.fetch_add(1, std::memory_order_relaxed);
  }
  return theta.dot(c) - alpha * std::sqrt(radicand);
}

LearnerModel fit_all(const SufficientStats& stats, LearnerMode mode) {
  const auto& cfg = stats.config();
  LearnerModel model;
  model.mode = mode;
  model.theta.resize(cfg.context_dim, cfg.num_actions);
  if (mode == LearnerMode::PostHocAugmented) {
    model.transform = transform_matrix(stats);
    for (int a = 0; a < cfg.num_actions; ++a)
      model.theta.col(a) = fit_posthoc_augmented(stats, a, model.transform);
    model.phi = model.transform * model.theta;
  } else {
    for (int a = 0; a < cfg.num_actions; ++a) model.theta.col(a) = fit_context_only(stats, a);
  }
  return model;
}

int select_action(const LearnerModel& model, const SufficientStats& stats, const Eigen::VectorXd& c,
                  const BanditConfig& config) {
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int a = 0; a < config.num_actions; ++a) {
    const double value = lcb(model.theta.col(a), covariance(stats, a, model.mode), c, config.alpha);
    if (value < best_value) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

int select_uniform(Rng& rng, int num_actions) { return rng.uniform_int(num_actions); }

BanditLearner::BanditLearner(const BanditConfig& config, LearnerMode mode)
    : config_(config), mode_(mode), stats_(config) {
  factors_.resize(config.num_actions);
  action_dirty_.assign(config.num_actions, true);
  model_.mode = mode_;
  model_.theta = Eigen::MatrixXd::Zero(config.context_dim, config.num_actions);
}

void BanditLearner::observe(const Interaction& x) {
  if (!x.has_posthoc() && mode_ == LearnerMode::ContextOnly) {
    Interaction padded = x;
    padded.posthoc = Eigen::VectorXd::Zero(config_.posthoc_dim);
    stats_.observe(padded);
  } else {
    stats_.observe(x);
  }
  if (x.action >= 0 && x.action < config_.num_actions) action_dirty_[x.action] = true;
  dirty_ = true;
}

void BanditLearner::refit() {
  model_.mode = mode_;
  model_.theta.resize(config_.context_dim, config_.num_actions);
  if (mode_ == LearnerMode::PostHocAugmented) {
    model_.transform = transform_matrix(stats_);
    for (int a = 0; a < config_.num_actions; ++a) {
      Eigen::MatrixXd gram = stats_.ctc(a);
      gram.noalias() += model_.transform.transpose() * stats_.ptp(a) * model_.transform;
      factors_[a].compute(gram);
      Eigen::VectorXd rhs = stats_.ctl(a);
      rhs.noalias() += model_.transform.transpose() * stats_.ptl(a);
      model_.theta.col(a) = factors_[a].solve(rhs);
    }
    model_.phi = model_.transform * model_.theta;
  } else {
    // Only the Gram block of an observed action has changed since last refit.
    for (int a = 0; a < config_.num_actions; ++a) {
      if (!action_dirty_[a]) continue;
      factors_[a].compute(stats_.ctc(a));
      model_.theta.col(a) = factors_[a].solve(stats_.ctl(a));
      action_dirty_[a] = false;
    }
  }
  dirty_ = false;
}

const LearnerModel& BanditLearner::model() {
  if (dirty_) refit();
  return model_;
}

int BanditLearner::select(const Eigen::VectorXd& c) {
  if (dirty_) refit();
  const double scale = mode_ == LearnerMode::PostHocAugmented ? 2.0 : 1.0;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int a = 0; a < config_.num_actions; ++a) {
    double radicand = scale * c.dot(factors_[a].solve(c));
    if (radicand < 0.0) {
      radicand = 0.0;
      diagnostics::lcb_clamped.fetch_add(1, std::memory_order_relaxed);
    }
    const double value = model_.theta.col(a).dot(c) - config_.alpha * std::sqrt(radicand);
    if (value < best_value) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

}  // namespace posthoc
