#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "posthoc/rng.hpp"
#include "posthoc/types.hpp"

namespace posthoc {

// Hidden linear map from post hoc context to the full loss vector, drawn at
// full rank with a bounded condition number.
struct HiddenPostHocModel {
  Eigen::MatrixXd phi_star;  // d_p x K
  std::uint64_t seed = 0;
  double condition_bound = 1e6;
};

HiddenPostHocModel generate_phi_star(int posthoc_dim, int num_actions, std::uint64_t seed,
                                     double condition_bound = 1e6, int max_retries = 100);

struct SyntheticEnvSpec {
  int num_actions = 10;
  int context_dim = 10;
  int posthoc_dim = 3;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EnvStep {
  Eigen::VectorXd context;
  Eigen::VectorXd posthoc;
  Eigen::VectorXd full_loss;
};

// c ~ U[0,1)^{d_c}; p = first d_p components of c; loss = phi_star^T p
// plus optional per-component Gaussian noise.
EnvStep synthetic_step(const SyntheticEnvSpec& spec, const HiddenPostHocModel& model, Rng& rng);

}  // namespace posthoc
