#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "posthoc/environment.hpp"
#include "posthoc/evaluate.hpp"
#include "posthoc/mnist_env.hpp"
#include "posthoc/replay.hpp"
#include "posthoc/types.hpp"

namespace posthoc {

struct RunConfig {
  std::uint64_t seed = 0;
  int trials = 40;
  int steps = 1000;
  double alpha = 0.1;
  double ridge_lambda = 1.0;
  int context_dim = 10;
  int posthoc_dim = 3;
  int num_actions = 10;
  double noise_sigma = 0.0;
  std::string data_dir;
  std::string out_dir = ".";
  std::string learner = "both";  // context-only | posthoc | both; filters outputs
};

// ---- Experiment 1: synthetic low-dimension post hoc context ----

struct Exp1Result {
  // One cumulative-regret curve per trial, per learner. Trials are paired:
  // both learners see the identical environment stream.
  std::vector<std::vector<double>> regret_context_only;
  std::vector<std::vector<double>> regret_augmented;
};

Exp1Result run_exp1_dim(const RunConfig& config);
void write_exp1_outputs(const Exp1Result& result, const RunConfig& config, const std::string& out_dir);

// ---- Experiment 2: MNIST-derived contexts ----

struct Exp2MseResult {
  std::vector<int> eval_steps;  // sample counts at each evaluation point
  // Per seed, one curve per metric. "mse" is the squared-error test MSE
  // (1/N) sum ||theta^T c - l||^2; "greedy" is the mean test loss of the
  // greedy argmin policy under the same model.
  std::vector<std::vector<double>> mse_context_only, mse_augmented, mse_posthoc;
  std::vector<std::vector<double>> greedy_context_only, greedy_augmented, greedy_posthoc;
  double floor_mse = 0.0;     // full-feedback fit on all training samples
  double floor_greedy = 0.0;  // greedy test loss of the same full-feedback fit
};

// Uniform exploration on the training sequence; evaluation every
// `eval_every` samples on a fixed `test_subset` drawn per run.
Exp2MseResult run_exp2_mse(MnistEnv& env, const RunConfig& config, int num_seeds, int eval_every = 10,
                           int test_subset = 2000);
void write_exp2_mse_outputs(const Exp2MseResult& result, const std::string& out_dir,
                            const std::string& learner = "both");

struct Exp2RegretResult {
  std::vector<std::vector<double>> regret_context_only;
  std::vector<std::vector<double>> regret_augmented;
};

// LinUCB over the (shuffled) 10k test sequence.
Exp2RegretResult run_exp2_regret(MnistEnv& env, const RunConfig& config, int num_seeds);
void write_exp2_regret_outputs(const Exp2RegretResult& result, const std::string& out_dir,
                               const std::string& learner = "both");

// ---- Offline evaluation of a logged interaction dataset ----

struct OfflineEvalReport {
  std::vector<int> eval_steps;
  std::vector<double> mse_context_only, mse_augmented, mse_difference;
  std::vector<double> alpha_grid;
  std::vector<double> replay_loss_context_only, replay_loss_augmented;  // per alpha
};

OfflineEvalReport run_offline_eval(const std::vector<Interaction>& log, const RunConfig& config,
                                   Imputation imputation, const std::vector<double>& alpha_grid,
                                   double train_fraction = 0.7);
void write_offline_eval_outputs(const OfflineEvalReport& report, const std::string& out_dir);

}  // namespace posthoc
