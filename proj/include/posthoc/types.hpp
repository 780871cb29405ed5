#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>

namespace posthoc {

enum class LearnerMode { ContextOnly, PostHocAugmented };

inline const char* to_string(LearnerMode mode) {
  return mode == LearnerMode::ContextOnly ? "context-only" : "posthoc-augmented";
}

struct BanditConfig {
  int num_actions = 2;    // K
  int context_dim = 1;    // d_c
  int posthoc_dim = 1;    // d_p
  double alpha = 0.1;     // confidence width
  double ridge_lambda = 1.0;

  void validate() const {
    if (num_actions < 2) throw std::invalid_argument("BanditConfig: num_actions must be >= 2");
    if (context_dim < 1) throw std::invalid_argument("BanditConfig: context_dim must be >= 1");
    if (posthoc_dim < 1) throw std::invalid_argument("BanditConfig: posthoc_dim must be >= 1");
    if (!(ridge_lambda > 0.0)) throw std::invalid_argument("BanditConfig: ridge_lambda must be > 0");
    if (alpha < 0.0) throw std::invalid_argument("BanditConfig: alpha must be >= 0");
  }
};

// One logged round. `posthoc` may be empty (size 0) for context-only replay;
// `full_loss` is simulation-only bookkeeping for regret accounting.
struct Interaction {
  Eigen::VectorXd context;
  int action = 0;
  double loss = 0.0;
  Eigen::VectorXd posthoc;
  std::optional<Eigen::VectorXd> full_loss;
  std::optional<double> propensity;
  std::string group_key;

  bool has_posthoc() const { return posthoc.size() > 0; }
};

}  // namespace posthoc
