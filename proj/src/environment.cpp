#include "posthoc/environment.hpp"

#include <stdexcept>
#include <string>

namespace posthoc {

HiddenPostHocModel generate_phi_star(int posthoc_dim, int num_actions, std::uint64_t seed,
                                     double condition_bound, int max_retries) {
  if (posthoc_dim < 1 || num_actions < 1)
    throw std::invalid_argument("generate_phi_star: dimensions must be >= 1");
  Rng rng(seed);
  double achieved = 0.0;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Eigen::MatrixXd phi(posthoc_dim, num_actions);
    for (int i = 0; i < posthoc_dim; ++i)
      for (int j = 0; j < num_actions; ++j) phi(i, j) = rng.gaussian();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    achieved = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
    if (achieved <= condition_bound) return {phi, seed, condition_bound};
  }
  throw std::runtime_error("generate_phi_star: retry budget exhausted, last condition number " +
                           std::to_string(achieved) + " > bound " + std::to_string(condition_bound));
}

void SyntheticEnvSpec::validate() const {
  if (posthoc_dim > context_dim)
    throw std::invalid_argument("SyntheticEnvSpec: posthoc_dim must be <= context_dim");
  if (num_actions < 1 || context_dim < 1 || posthoc_dim < 1)
    throw std::invalid_argument("SyntheticEnvSpec: dimensions must be >= 1");
  if (noise_sigma < 0.0) throw std::invalid_argument("SyntheticEnvSpec: noise_sigma must be >= 0");
}

EnvStep synthetic_step(const SyntheticEnvSpec& spec, const HiddenPostHocModel& model, Rng& rng) {
  if (model.phi_star.rows() != spec.posthoc_dim || model.phi_star.cols() != spec.num_actions)
    throw std::invalid_argument("synthetic_step: phi_star dimensions do not match spec");
  EnvStep step;
  step.context.resize(spec.context_dim);
  for (int i = 0; i < spec.context_dim; ++i) step.context(i) = rng.uniform();
  step.posthoc = step.context.head(spec.posthoc_dim);
  step.full_loss = model.phi_star.transpose() * step.posthoc;
  if (spec.noise_sigma > 0.0)
    for (int a = 0; a < spec.num_actions; ++a) step.full_loss(a) += spec.noise_sigma * rng.gaussian();
  return step;
}

}  // namespace posthoc
