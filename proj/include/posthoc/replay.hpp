#pragma once

#include <Eigen/Dense>
#include <vector>

#include "posthoc/types.hpp"

namespace posthoc {

enum class Imputation { Herded, DoublyRobust };

// Builds a full-feedback loss sequence from a bandit-feedback log.
//
// Herded: l_hat[a] is the mean observed loss for action a within the
// interaction's group (same group_key); (group, action) pairs with no
// observation fall back to the global per-action mean.
//
// DoublyRobust: adds the inverse-propensity correction
// l_dr[a] = l_hat[a] + (l - l_hat[a]) * 1(i = a) / P[i = a] per round.
std::vector<Eigen::VectorXd> impute_full_losses(const std::vector<Interaction>& log, int num_actions,
                                                Imputation mode);

}  // namespace posthoc
