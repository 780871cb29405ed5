#pragma once

#include <Eigen/Dense>
#include <vector>

#include "posthoc/types.hpp"

namespace posthoc {

// Accumulated cross-products of contexts, post hoc contexts, and losses.
// Every Gram block starts at ridge_lambda * I, so all of them stay positive
// definite from step 0 onward.
class SufficientStats {
 public:
  explicit SufficientStats(const BanditConfig& config);

  // Rank-1 accumulation of one round. Requires a post hoc vector.
  void observe(const Interaction& x);

  const Eigen::MatrixXd& ctc(int a) const { return ctc_a_.at(a); }
  const Eigen::MatrixXd& ptp(int a) const { return ptp_a_.at(a); }
  const Eigen::MatrixXd& ctc() const { return ctc_; }
  const Eigen::MatrixXd& ptp() const { return ptp_; }
  const Eigen::MatrixXd& ctp() const { return ctp_; }
  const Eigen::VectorXd& ctl(int a) const { return ctl_a_.at(a); }
  const Eigen::VectorXd& ptl(int a) const { return ptl_a_.at(a); }
  long count(int a) const { return count_a_.at(a); }
  long total() const { return total_; }

  const BanditConfig& config() const { return config_; }

  // Test hook for the matched-ridge convention: folds lambda * I into the
  // cross block so H comes out exactly I when the two streams coincide.
  void add_ridge_to_cross() { ctp_ += config_.ridge_lambda * Eigen::MatrixXd::Identity(config_.context_dim, config_.posthoc_dim); }

 private:
  BanditConfig config_;
  std::vector<Eigen::MatrixXd> ctc_a_, ptp_a_;
  Eigen::MatrixXd ctc_, ptp_, ctp_;
  std::vector<Eigen::VectorXd> ctl_a_, ptl_a_;
  std::vector<long> count_a_;
  long total_ = 0;
};

}  // namespace posthoc
