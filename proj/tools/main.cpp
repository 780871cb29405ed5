#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "posthoc/experiments.hpp"
#include "posthoc/log_io.hpp"
#include "posthoc/mnist_env.hpp"
#include "posthoc/replay.hpp"

namespace {

std::string default_data_dir() {
  if (const char* env = std::getenv("POSTHOC_DATA_DIR")) return env;
  return "/root/data/mnist";
}

void echo_config(const posthoc::RunConfig& c) {
  std::cout << "seed=" << c.seed << " trials=" << c.trials << " steps=" << c.steps
            << " alpha=" << c.alpha << " ridge-lambda=" << c.ridge_lambda
            << " context-dim=" << c.context_dim << " posthoc-dim=" << c.posthoc_dim
            << " num-actions=" << c.num_actions << " noise-sigma=" << c.noise_sigma
            << " out-dir=" << c.out_dir << "\n";
}

void add_common_options(CLI::App* cmd, posthoc::RunConfig& c) {
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--alpha", c.alpha, "Exploration width multiplier");
  cmd->add_option("--ridge-lambda", c.ridge_lambda, "Ridge regularization strength");
  cmd->add_option("--out-dir", c.out_dir, "Directory for CSV outputs");
  cmd->add_option("--learner", c.learner, "Which learner's curves to write")
      ->check(CLI::IsMember({"context-only", "posthoc", "both"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post hoc context bandit experiments"};
  app.require_subcommand(1);

  posthoc::RunConfig config;
  config.data_dir = default_data_dir();

  auto* exp1 = app.add_subcommand("exp1", "Synthetic low-dimension post hoc context experiment");
  add_common_options(exp1, config);
  exp1->add_option("--trials", config.trials, "Independent trials per dimension");
  exp1->add_option("--steps", config.steps, "Bandit steps per trial");
  exp1->add_option("--context-dim", config.context_dim, "Context dimension");
  exp1->add_option("--posthoc-dim", config.posthoc_dim, "Post hoc context dimension");
  exp1->add_option("--num-actions", config.num_actions, "Number of actions");
  exp1->add_option("--noise-sigma", config.noise_sigma, "Loss noise standard deviation");

  auto* exp2_mse = app.add_subcommand("exp2-mse", "MNIST prediction-error experiment");
  add_common_options(exp2_mse, config);
  int num_seeds = 10;
  int eval_every = 10;
  int test_subset = 2000;
  exp2_mse->add_option("--num-seeds", num_seeds, "Independent seeds");
  exp2_mse->add_option("--steps", config.steps, "Training samples consumed per seed");
  exp2_mse->add_option("--context-dim", config.context_dim, "PCA context dimension");
  exp2_mse->add_option("--eval-every", eval_every, "Evaluate every this many samples");
  exp2_mse->add_option("--test-subset", test_subset, "Test examples scored per evaluation");
  exp2_mse->add_option("--data-dir", config.data_dir, "MNIST IDX directory");

  auto* exp2_regret = app.add_subcommand("exp2-regret", "MNIST bandit-regret experiment");
  add_common_options(exp2_regret, config);
  exp2_regret->add_option("--num-seeds", num_seeds, "Independent seeds");
  exp2_regret->add_option("--steps", config.steps, "Bandit steps (capped at the test-set size)");
  exp2_regret->add_option("--context-dim", config.context_dim, "PCA context dimension");
  exp2_regret->add_option("--data-dir", config.data_dir, "MNIST IDX directory");

  auto* offline = app.add_subcommand("offline-eval", "Offline evaluation of a logged dataset");
  add_common_options(offline, config);
  std::string log_path;
  std::string imputation_name = "herded";
  std::vector<double> alpha_grid{0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0};
  double train_fraction = 0.7;
  offline->add_option("--log", log_path, "JSONL interaction log")->required();
  offline->add_option("--imputation", imputation_name, "herded or doubly-robust")
      ->check(CLI::IsMember({"herded", "doubly-robust"}));
  offline->add_option("--alpha-grid", alpha_grid, "Alpha values swept in the replay");
  offline->add_option("--train-fraction", train_fraction, "Fraction of the log used for fitting");

  auto* oracles = app.add_subcommand("proptest-oracles", "Randomized cross-check suite");
  std::uint64_t oracle_seed = 0;
  oracles->add_option("--seed", oracle_seed, "Suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exp1->parsed()) {
      echo_config(config);
      const auto result = posthoc::run_exp1_dim(config);
      posthoc::write_exp1_outputs(result, config, config.out_dir);
      std::cout << "wrote exp1 outputs for context-dim " << config.context_dim << " to "
                << config.out_dir << "\n";
    } else if (exp2_mse->parsed()) {
      config.context_dim = exp2_mse->count("--context-dim") ? config.context_dim : 200;
      config.posthoc_dim = 10;
      config.steps = exp2_mse->count("--steps") ? config.steps : 2000;
      echo_config(config);
      auto env = posthoc::MnistEnv::load(config.data_dir, config.context_dim, config.seed);
      const auto result = posthoc::run_exp2_mse(env, config, num_seeds, eval_every, test_subset);
      posthoc::write_exp2_mse_outputs(result, config.out_dir, config.learner);
      std::cout << "floor mse " << result.floor_mse << " floor greedy loss " << result.floor_greedy
                << "\n";
    } else if (exp2_regret->parsed()) {
      config.context_dim = exp2_regret->count("--context-dim") ? config.context_dim : 200;
      config.posthoc_dim = 10;
      config.steps = exp2_regret->count("--steps") ? config.steps : 10000;
      echo_config(config);
      auto env = posthoc::MnistEnv::load(config.data_dir, config.context_dim, config.seed);
      const auto result = posthoc::run_exp2_regret(env, config, num_seeds);
      posthoc::write_exp2_regret_outputs(result, config.out_dir, config.learner);
      std::cout << "wrote exp2 regret outputs to " << config.out_dir << "\n";
    } else if (offline->parsed()) {
      config.alpha = offline->count("--alpha") ? config.alpha : 0.01;
      echo_config(config);
      const auto log = posthoc::read_interaction_log(log_path);
      const auto imputation = imputation_name == "herded" ? posthoc::Imputation::Herded
                                                          : posthoc::Imputation::DoublyRobust;
      const auto report = posthoc::run_offline_eval(log, config, imputation, alpha_grid, train_fraction);
      posthoc::write_offline_eval_outputs(report, config.out_dir);
      std::cout << "wrote offline evaluation outputs to " << config.out_dir << "\n";
    } else if (oracles->parsed()) {
      return posthoc::oracles::run_oracle_suite(oracle_seed, std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
