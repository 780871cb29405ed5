#include "posthoc/stats.hpp"

#include <stdexcept>
#include <string>

namespace posthoc {

SufficientStats::SufficientStats(const BanditConfig& config) : config_(config) {
  config_.validate();
  const int K = config_.num_actions;
  const int dc = config_.context_dim;
  const int dp = config_.posthoc_dim;
  const double lam = config_.ridge_lambda;
  ctc_a_.assign(K, lam * Eigen::MatrixXd::Identity(dc, dc));
  ptp_a_.assign(K, lam * Eigen::MatrixXd::Identity(dp, dp));
  ctc_ = lam * Eigen::MatrixXd::Identity(dc, dc);
  ptp_ = lam * Eigen::MatrixXd::Identity(dp, dp);
  ctp_ = Eigen::MatrixXd::Zero(dc, dp);
  ctl_a_.assign(K, Eigen::VectorXd::Zero(dc));
  ptl_a_.assign(K, Eigen::VectorXd::Zero(dp));
  count_a_.assign(K, 0);
}

void SufficientStats::observe(const Interaction& x) {
  if (x.action < 0 || x.action >= config_.num_actions)
    throw std::invalid_argument("observe: action " + std::to_string(x.action) + " out of range [0, " +
                                std::to_string(config_.num_actions) + ")");
  if (x.context.size() != config_.context_dim)
    throw std::invalid_argument("observe: context dimension " + std::to_string(x.context.size()) +
                                " != " + std::to_string(config_.context_dim));
  if (x.posthoc.size() != config_.posthoc_dim)
    throw std::invalid_argument("observe: posthoc dimension " + std::to_string(x.posthoc.size()) +
                                " != " + std::to_string(config_.posthoc_dim));

  const auto& c = x.context;
  const auto& p = x.posthoc;
  ctc_a_[x.action].selfadjointView<Eigen::Lower>().rankUpdate(c);
  ctc_a_[x.action].triangularView<Eigen::StrictlyUpper>() = ctc_a_[x.action].transpose();
  ptp_a_[x.action].selfadjointView<Eigen::Lower>().rankUpdate(p);
  ptp_a_[x.action].triangularView<Eigen::StrictlyUpper>() = ptp_a_[x.action].transpose();
  ctc_.selfadjointView<Eigen::Lower>().rankUpdate(c);
  ctc_.triangularView<Eigen::StrictlyUpper>() = ctc_.transpose();
  ptp_.selfadjointView<Eigen::Lower>().rankUpdate(p);
  ptp_.triangularView<Eigen::StrictlyUpper>() = ptp_.transpose();
  ctp_.noalias() += c * p.transpose();
  ctl_a_[x.action].noalias() += c * x.loss;
  ptl_a_[x.action].noalias() += p * x.loss;
  ++count_a_[x.action];
  ++total_;
}

}  // namespace posthoc
