#include "posthoc/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "posthoc/rng.hpp"

namespace posthoc {

std::vector<double> cumulative_regret(const Trajectory& traj) {
  if (traj.best_loss.size() != traj.incurred_loss.size() || traj.best_loss.empty() != traj.incurred_loss.empty())
    throw std::invalid_argument("cumulative_regret: inconsistent trajectory lengths");
  if (traj.incurred_loss.empty()) return {};
  if (traj.best_loss.empty())
    throw std::invalid_argument("cumulative_regret: full losses unavailable, use cumulative_loss");
  std::vector<double> out(traj.incurred_loss.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < out.size(); ++t) {
    sum += traj.incurred_loss[t] - traj.best_loss[t];
    out[t] = sum;
  }
  return out;
}

std::vector<double> cumulative_loss(const Trajectory& traj) {
  std::vector<double> out(traj.incurred_loss.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < out.size(); ++t) {
    sum += traj.incurred_loss[t];
    out[t] = sum;
  }
  return out;
}

double best_fixed_action_regret(const std::vector<double>& incurred,
                                const std::vector<Eigen::VectorXd>& full_losses) {
  if (incurred.size() != full_losses.size())
    throw std::invalid_argument("best_fixed_action_regret: length mismatch");
  if (incurred.empty()) return 0.0;
  const Eigen::Index num_actions = full_losses.front().size();
  double incurred_sum = 0.0;
  Eigen::VectorXd per_action = Eigen::VectorXd::Zero(num_actions);
  for (std::size_t t = 0; t < incurred.size(); ++t) {
    incurred_sum += incurred[t];
    per_action += full_losses[t];
  }
  return incurred_sum - per_action.minCoeff();
}

double test_mse(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& contexts,
                const Eigen::MatrixXd& losses) {
  if (contexts.rows() == 0) throw std::invalid_argument("test_mse: empty test set");
  if (contexts.rows() != losses.rows() || weights.rows() != contexts.cols() ||
      weights.cols() != losses.cols())
    throw std::invalid_argument("test_mse: dimension mismatch");
  return (contexts * weights - losses).rowwise().squaredNorm().mean();
}

double greedy_test_loss(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& contexts,
                        const Eigen::MatrixXd& losses) {
  if (contexts.rows() == 0) throw std::invalid_argument("greedy_test_loss: empty test set");
  const Eigen::MatrixXd pred = contexts * weights;
  double total = 0.0;
  for (Eigen::Index i = 0; i < pred.rows(); ++i) {
    Eigen::Index pick = 0;
    pred.row(i).minCoeff(&pick);
    total += losses(i, pick);
  }
  return total / static_cast<double>(pred.rows());
}

MeanStderrCurve aggregate(const std::vector<std::vector<double>>& curves) {
  if (curves.empty()) throw std::invalid_argument("aggregate: no curves");
  const std::size_t len = curves.front().size();
  for (const auto& c : curves)
    if (c.size() != len) throw std::invalid_argument("aggregate: curves have mixed lengths");

  MeanStderrCurve out;
  out.mean.assign(len, 0.0);
  out.stderr_.assign(len, 0.0);
  const double n = static_cast<double>(curves.size());
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& c : curves) sum += c[t];
    out.mean[t] = sum / n;
    if (curves.size() > 1) {
      double ss = 0.0;
      for (const auto& c : curves) ss += (c[t] - out.mean[t]) * (c[t] - out.mean[t]);
      out.stderr_[t] = std::sqrt(ss / (n - 1.0) / n);
    }
  }
  return out;
}

BootstrapCi bootstrap_ci_final_diff(const std::vector<std::vector<double>>& a,
                                    const std::vector<std::vector<double>>& b, int resamples,
                                    std::uint64_t seed, double coverage) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("bootstrap_ci_final_diff: need equally many paired curves");
  const int n = static_cast<int>(a.size());
  std::vector<double> diffs(n);
  for (int i = 0; i < n; ++i) diffs[i] = a[i].back() - b[i].back();

  Rng rng(seed);
  std::vector<double> means(resamples);
  for (int r = 0; r < resamples; ++r) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += diffs[rng.uniform_int(n)];
    means[r] = sum / n;
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - coverage) / 2.0;
  const auto idx = [&](double q) {
    return std::clamp<int>(static_cast<int>(q * (resamples - 1)), 0, resamples - 1);
  };
  return {means[idx(tail)], means[idx(1.0 - tail)]};
}

}  // namespace posthoc
