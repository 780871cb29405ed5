#include "posthoc/replay.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace posthoc {

namespace {

struct RunningMean {
  double sum = 0.0;
  long n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
};

}  // namespace

std::vector<Eigen::VectorXd> impute_full_losses(const std::vector<Interaction>& log, int num_actions,
                                                Imputation mode) {
  if (log.empty()) throw std::invalid_argument("impute_full_losses: empty log");

  std::map<std::pair<std::string, int>, RunningMean> group_means;
  std::vector<RunningMean> global_means(num_actions);
  for (const auto& x : log) {
    if (x.action < 0 || x.action >= num_actions)
      throw std::invalid_argument("impute_full_losses: action out of range");
    group_means[{x.group_key, x.action}].add(x.loss);
    global_means[x.action].add(x.loss);
  }

  std::vector<Eigen::VectorXd> out;
  out.reserve(log.size());
  for (const auto& x : log) {
    Eigen::VectorXd herded(num_actions);
    for (int a = 0; a < num_actions; ++a) {
      const auto it = group_means.find({x.group_key, a});
      if (it != group_means.end()) {
        herded(a) = it->second.mean();
      } else if (global_means[a].n > 0) {
        herded(a) = global_means[a].mean();
      } else {
        throw std::invalid_argument("impute_full_losses: action " + std::to_string(a) +
                                 " never observed, no fallback available");
      }
    }
    if (mode == Imputation::DoublyRobust) {
      if (!x.propensity.has_value())
        throw std::invalid_argument("impute_full_losses: DoublyRobust requires propensities");
      if (!(*x.propensity > 0.0))
        throw std::invalid_argument("impute_full_losses: propensity must be > 0");
      herded(x.action) += (x.loss - herded(x.action)) / *x.propensity;
    }
    out.push_back(std::move(herded));
  }
  return out;
}

}  // namespace posthoc
