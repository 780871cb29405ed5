#include "posthoc/experiments.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "posthoc/csv.hpp"
#include "posthoc/learner.hpp"
#include "posthoc/rng.hpp"

namespace posthoc {

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.uniform_int(static_cast<int>(i))]);
  return idx;
}

void write_mean_stderr_csv(const std::string& path, const std::vector<std::vector<double>>& curves) {
  const MeanStderrCurve agg = aggregate(curves);
  CsvWriter csv(path);
  csv.row({"step", "mean", "stderr"});
  for (std::size_t t = 0; t < agg.mean.size(); ++t)
    csv.row({std::to_string(t + 1), format_double(agg.mean[t]), format_double(agg.stderr_[t])});
}

void write_difference_csv(const std::string& path, const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b, std::uint64_t seed) {
  const MeanStderrCurve agg_a = aggregate(a);
  const MeanStderrCurve agg_b = aggregate(b);
  const BootstrapCi ci = bootstrap_ci_final_diff(a, b, 2000, seed);
  CsvWriter csv(path);
  csv.row({"step", "mean_diff", "final_ci_lo", "final_ci_hi"});
  for (std::size_t t = 0; t < agg_a.mean.size(); ++t)
    csv.row({std::to_string(t + 1), format_double(agg_a.mean[t] - agg_b.mean[t]),
             t + 1 == agg_a.mean.size() ? format_double(ci.lo) : "",
             t + 1 == agg_a.mean.size() ? format_double(ci.hi) : ""});
}

Eigen::MatrixXd loss_matrix(const std::vector<int>& labels, const std::vector<std::size_t>& subset) {
  Eigen::MatrixXd losses(subset.size(), MnistEnv::kNumActions);
  for (std::size_t i = 0; i < subset.size(); ++i)
    losses.row(static_cast<Eigen::Index>(i)) = MnistEnv::full_loss_for_label(labels[subset[i]]).transpose();
  return losses;
}

}  // namespace

Exp1Result run_exp1_dim(const RunConfig& config) {
  SyntheticEnvSpec spec;
  spec.num_actions = config.num_actions;
  spec.context_dim = config.context_dim;
  spec.posthoc_dim = config.posthoc_dim;
  spec.noise_sigma = config.noise_sigma;
  spec.validate();

  BanditConfig bandit{config.num_actions, config.context_dim, config.posthoc_dim, config.alpha,
                      config.ridge_lambda};
  bandit.validate();

  Exp1Result result;
  for (int trial = 0; trial < config.trials; ++trial) {
    Rng rng = Rng::child(config.seed, static_cast<std::uint64_t>(trial));
    const HiddenPostHocModel phi = generate_phi_star(spec.posthoc_dim, spec.num_actions, rng.next_u64());

    BanditLearner context_only(bandit, LearnerMode::ContextOnly);
    BanditLearner augmented(bandit, LearnerMode::PostHocAugmented);
    Trajectory traj_ctx, traj_aug;
    for (int t = 0; t < config.steps; ++t) {
      const EnvStep step = synthetic_step(spec, phi, rng);
      const double best = step.full_loss.minCoeff();
      for (auto pair : {std::pair<BanditLearner*, Trajectory*>{&context_only, &traj_ctx},
                         std::pair<BanditLearner*, Trajectory*>{&augmented, &traj_aug}}) {
        const int a = pair.first->select(step.context);
        const double loss = step.full_loss(a);
        pair.first->observe({step.context, a, loss, step.posthoc, step.full_loss, {}, {}});
        pair.second->record(loss, best);
      }
    }
    result.regret_context_only.push_back(cumulative_regret(traj_ctx));
    result.regret_augmented.push_back(cumulative_regret(traj_aug));
  }
  return result;
}

void write_exp1_outputs(const Exp1Result& result, const RunConfig& config, const std::string& out_dir) {
  const std::string tag = "_dc" + std::to_string(config.context_dim);
  if (config.learner != "posthoc")
    write_mean_stderr_csv(out_dir + "/exp1" + tag + "_context_only.csv", result.regret_context_only);
  if (config.learner != "context-only")
    write_mean_stderr_csv(out_dir + "/exp1" + tag + "_augmented.csv", result.regret_augmented);
  if (config.learner == "both")
    write_difference_csv(out_dir + "/exp1" + tag + "_difference.csv", result.regret_context_only,
                         result.regret_augmented, config.seed);
}

Exp2MseResult run_exp2_mse(MnistEnv& env, const RunConfig& config, int num_seeds, int eval_every,
                           int test_subset) {
  BanditConfig bandit{MnistEnv::kNumActions, env.context_dim(), MnistEnv::kNumActions, config.alpha,
                      config.ridge_lambda};
  bandit.validate();

  Exp2MseResult result;
  for (int t = eval_every; t <= config.steps; t += eval_every) result.eval_steps.push_back(t);

  for (int s = 0; s < num_seeds; ++s) {
    Rng rng = Rng::child(config.seed, static_cast<std::uint64_t>(s));
    env.reseed_posthoc(rng.next_u64());
    const auto train_order = shuffled_indices(env.train_size(), rng);
    auto test_order = shuffled_indices(env.test_size(), rng);
    test_order.resize(static_cast<std::size_t>(test_subset));

    Eigen::MatrixXd test_contexts(test_subset, env.context_dim());
    Eigen::MatrixXd test_posthocs(test_subset, MnistEnv::kNumActions);
    for (int i = 0; i < test_subset; ++i) {
      test_contexts.row(i) = env.test_contexts().row(static_cast<Eigen::Index>(test_order[i]));
      test_posthocs.row(i) = env.posthoc_for_label(env.test_labels()[test_order[i]]).transpose();
    }
    const Eigen::MatrixXd test_losses = loss_matrix(env.test_labels(), test_order);

    BanditLearner context_only(bandit, LearnerMode::ContextOnly);
    BanditLearner augmented(bandit, LearnerMode::PostHocAugmented);
    std::vector<double> mse_ctx, mse_aug, mse_phi, greedy_ctx, greedy_aug, greedy_phi;
    for (int t = 0; t < config.steps; ++t) {
      const EnvStep step = env.train_step(train_order[static_cast<std::size_t>(t)]);
      const int a = select_uniform(rng, MnistEnv::kNumActions);
      const Interaction x{step.context, a, step.full_loss(a), step.posthoc, {}, {}, {}};
      context_only.observe(x);
      augmented.observe(x);
      if ((t + 1) % eval_every == 0) {
        const LearnerModel& ctx_model = context_only.model();
        const LearnerModel& aug_model = augmented.model();
        mse_ctx.push_back(test_mse(ctx_model.theta, test_contexts, test_losses));
        mse_aug.push_back(test_mse(aug_model.theta, test_contexts, test_losses));
        mse_phi.push_back(test_mse(aug_model.phi, test_posthocs, test_losses));
        greedy_ctx.push_back(greedy_test_loss(ctx_model.theta, test_contexts, test_losses));
        greedy_aug.push_back(greedy_test_loss(aug_model.theta, test_contexts, test_losses));
        greedy_phi.push_back(greedy_test_loss(aug_model.phi, test_posthocs, test_losses));
      }
    }
    result.mse_context_only.push_back(std::move(mse_ctx));
    result.mse_augmented.push_back(std::move(mse_aug));
    result.mse_posthoc.push_back(std::move(mse_phi));
    result.greedy_context_only.push_back(std::move(greedy_ctx));
    result.greedy_augmented.push_back(std::move(greedy_aug));
    result.greedy_posthoc.push_back(std::move(greedy_phi));

    if (s == 0) {
      // Full-feedback floor: regression on every training sample with the
      // full loss vector, evaluated on the same test subset.
      const Eigen::MatrixXd& train = env.train_contexts();
      Eigen::MatrixXd gram = config.ridge_lambda *
                             Eigen::MatrixXd::Identity(env.context_dim(), env.context_dim());
      gram.selfadjointView<Eigen::Lower>().rankUpdate(train.transpose());
      gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
      std::vector<std::size_t> all_train(env.train_size());
      std::iota(all_train.begin(), all_train.end(), std::size_t{0});
      const Eigen::MatrixXd train_losses = loss_matrix(env.train_labels(), all_train);
      const Eigen::MatrixXd weights = gram.llt().solve(train.transpose() * train_losses);
      result.floor_mse = test_mse(weights, test_contexts, test_losses);
      result.floor_greedy = greedy_test_loss(weights, test_contexts, test_losses);
    }
  }
  return result;
}

void write_exp2_mse_outputs(const Exp2MseResult& result, const std::string& out_dir,
                            const std::string& learner) {
  const struct {
    const char* name;
    const std::vector<std::vector<double>>* curves;
    bool context_side;
  } metrics[] = {
      {"mse_context_only", &result.mse_context_only, true},
      {"mse_augmented", &result.mse_augmented, false},
      {"mse_posthoc", &result.mse_posthoc, false},
      {"greedy_loss_context_only", &result.greedy_context_only, true},
      {"greedy_loss_augmented", &result.greedy_augmented, false},
      {"greedy_loss_posthoc", &result.greedy_posthoc, false},
  };
  for (const auto& m : metrics) {
    if (learner == "context-only" && !m.context_side) continue;
    if (learner == "posthoc" && m.context_side) continue;
    const MeanStderrCurve agg = aggregate(*m.curves);
    CsvWriter csv(out_dir + "/exp2_" + m.name + ".csv");
    csv.row({"step", "mean", "stderr"});
    for (std::size_t i = 0; i < agg.mean.size(); ++i)
      csv.row({std::to_string(result.eval_steps[i]), format_double(agg.mean[i]),
               format_double(agg.stderr_[i])});
  }
  CsvWriter csv(out_dir + "/exp2_floor.csv");
  csv.row({"metric", "value"});
  csv.row({"floor_mse", format_double(result.floor_mse)});
  csv.row({"floor_greedy_loss", format_double(result.floor_greedy)});
}

Exp2RegretResult run_exp2_regret(MnistEnv& env, const RunConfig& config, int num_seeds) {
  BanditConfig bandit{MnistEnv::kNumActions, env.context_dim(), MnistEnv::kNumActions, config.alpha,
                      config.ridge_lambda};
  bandit.validate();
  const int steps = std::min<int>(config.steps, static_cast<int>(env.test_size()));

  Exp2RegretResult result;
  for (int s = 0; s < num_seeds; ++s) {
    Rng rng = Rng::child(config.seed, static_cast<std::uint64_t>(s));
    env.reseed_posthoc(rng.next_u64());
    const auto order = shuffled_indices(env.test_size(), rng);

    BanditLearner context_only(bandit, LearnerMode::ContextOnly);
    BanditLearner augmented(bandit, LearnerMode::PostHocAugmented);
    Trajectory traj_ctx, traj_aug;
    for (int t = 0; t < steps; ++t) {
      const EnvStep step = env.test_step(order[static_cast<std::size_t>(t)]);
      for (auto pair : {std::pair<BanditLearner*, Trajectory*>{&context_only, &traj_ctx},
                         std::pair<BanditLearner*, Trajectory*>{&augmented, &traj_aug}}) {
        const int a = pair.first->select(step.context);
        const double loss = step.full_loss(a);
        pair.first->observe({step.context, a, loss, step.posthoc, step.full_loss, {}, {}});
        pair.second->record(loss, step.full_loss.minCoeff());
      }
    }
    result.regret_context_only.push_back(cumulative_regret(traj_ctx));
    result.regret_augmented.push_back(cumulative_regret(traj_aug));
  }
  return result;
}

void write_exp2_regret_outputs(const Exp2RegretResult& result, const std::string& out_dir,
                               const std::string& learner) {
  if (learner != "posthoc")
    write_mean_stderr_csv(out_dir + "/exp2_regret_context_only.csv", result.regret_context_only);
  if (learner != "context-only")
    write_mean_stderr_csv(out_dir + "/exp2_regret_augmented.csv", result.regret_augmented);
  if (learner == "both")
    write_difference_csv(out_dir + "/exp2_regret_difference.csv", result.regret_context_only,
                         result.regret_augmented, 0);
}

OfflineEvalReport run_offline_eval(const std::vector<Interaction>& log, const RunConfig& config,
                                   Imputation imputation, const std::vector<double>& alpha_grid,
                                   double train_fraction) {
  if (log.empty()) throw std::invalid_argument("run_offline_eval: empty log");
  const int context_dim = static_cast<int>(log.front().context.size());
  const int posthoc_dim = static_cast<int>(log.front().posthoc.size());
  if (posthoc_dim == 0)
    throw std::invalid_argument("run_offline_eval: log is missing field 'posthoc'");
  int num_actions = 2;
  for (const auto& x : log) num_actions = std::max(num_actions, x.action + 1);
  if (imputation == Imputation::Herded)
    for (const auto& x : log)
      if (x.group_key.empty())
        throw std::invalid_argument("run_offline_eval: log is missing field 'group_key'");
  if (imputation == Imputation::DoublyRobust)
    for (const auto& x : log)
      if (!x.propensity)
        throw std::invalid_argument("run_offline_eval: log is missing field 'propensity'");

  const auto imputed = impute_full_losses(log, num_actions, imputation);
  // Herded vectors double as the evaluation ground truth; they are the
  // best full-feedback surrogate the log supports.
  const auto herded = impute_full_losses(log, num_actions, Imputation::Herded);

  Rng rng = Rng::child(config.seed, 0);
  const auto order = shuffled_indices(log.size(), rng);
  const std::size_t train_size = std::max<std::size_t>(1, static_cast<std::size_t>(train_fraction * log.size()));
  std::vector<std::size_t> train_idx(order.begin(), order.begin() + train_size);
  std::vector<std::size_t> test_idx(order.begin() + train_size, order.end());
  if (test_idx.empty()) throw std::invalid_argument("run_offline_eval: log too small to split");

  Eigen::MatrixXd test_contexts(test_idx.size(), context_dim);
  Eigen::MatrixXd test_losses(test_idx.size(), num_actions);
  for (std::size_t i = 0; i < test_idx.size(); ++i) {
    test_contexts.row(static_cast<Eigen::Index>(i)) = log[test_idx[i]].context.transpose();
    test_losses.row(static_cast<Eigen::Index>(i)) = herded[test_idx[i]].transpose();
  }

  BanditConfig bandit{num_actions, context_dim, posthoc_dim, config.alpha, config.ridge_lambda};
  bandit.validate();

  OfflineEvalReport report;
  {
    BanditLearner context_only(bandit, LearnerMode::ContextOnly);
    BanditLearner augmented(bandit, LearnerMode::PostHocAugmented);
    for (std::size_t t = 0; t < train_idx.size(); ++t) {
      const Interaction& x = log[train_idx[t]];
      const int a = select_uniform(rng, num_actions);
      const Interaction fed{x.context, a, imputed[train_idx[t]](a), x.posthoc, {}, {}, {}};
      context_only.observe(fed);
      augmented.observe(fed);
      report.eval_steps.push_back(static_cast<int>(t + 1));
      const double mse_ctx = test_mse(context_only.model().theta, test_contexts, test_losses);
      const double mse_aug = test_mse(augmented.model().theta, test_contexts, test_losses);
      report.mse_context_only.push_back(mse_ctx);
      report.mse_augmented.push_back(mse_aug);
      report.mse_difference.push_back(mse_ctx - mse_aug);
    }
  }

  report.alpha_grid = alpha_grid;
  for (const double alpha : alpha_grid) {
    BanditConfig swept = bandit;
    swept.alpha = alpha;
    for (const LearnerMode mode : {LearnerMode::ContextOnly, LearnerMode::PostHocAugmented}) {
      BanditLearner learner(swept, mode);
      double total = 0.0;
      for (std::size_t t = 0; t < log.size(); ++t) {
        const Interaction& x = log[t];
        const int a = learner.select(x.context);
        const double loss = imputed[t](a);
        total += loss;
        learner.observe({x.context, a, loss, x.posthoc, {}, {}, {}});
      }
      (mode == LearnerMode::ContextOnly ? report.replay_loss_context_only : report.replay_loss_augmented)
          .push_back(total);
    }
  }
  return report;
}

void write_offline_eval_outputs(const OfflineEvalReport& report, const std::string& out_dir) {
  {
    CsvWriter csv(out_dir + "/offline_mse_difference.csv");
    csv.row({"step", "mse_context_only", "mse_augmented", "mse_difference"});
    for (std::size_t i = 0; i < report.eval_steps.size(); ++i)
      csv.row({std::to_string(report.eval_steps[i]), format_double(report.mse_context_only[i]),
               format_double(report.mse_augmented[i]), format_double(report.mse_difference[i])});
  }
  CsvWriter csv(out_dir + "/offline_alpha_sweep.csv");
  csv.row({"alpha", "replay_loss_context_only", "replay_loss_augmented"});
  for (std::size_t i = 0; i < report.alpha_grid.size(); ++i)
    csv.row({format_double(report.alpha_grid[i]), format_double(report.replay_loss_context_only[i]),
             format_double(report.replay_loss_augmented[i])});
}

}  // namespace posthoc
