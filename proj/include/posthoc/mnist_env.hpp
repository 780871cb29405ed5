#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "posthoc/environment.hpp"
#include "posthoc/pca.hpp"

namespace posthoc {

// MNIST-backed loss process: the context is the PCA projection of the image,
// the full loss is one minus the one-hot of the label, and the post hoc
// vector solves phi_star^T p = full_loss exactly (phi_star square and
// invertible), so the post hoc channel is noiseless and perfectly linear.
class MnistEnv {
 public:
  static constexpr int kNumActions = 10;

  // Reads the four canonical IDX files from `data_dir`, fits the PCA on the
  // training images, and draws phi_star from `seed`.
  static MnistEnv load(const std::string& data_dir, int context_dim = 200, std::uint64_t seed = 0,
                       double condition_bound = 1e6);

  EnvStep train_step(std::size_t index) const { return step(train_contexts_, train_labels_, index); }
  EnvStep test_step(std::size_t index) const { return step(test_contexts_, test_labels_, index); }

  std::size_t train_size() const { return train_labels_.size(); }
  std::size_t test_size() const { return test_labels_.size(); }
  int context_dim() const { return static_cast<int>(train_contexts_.cols()); }

  const Eigen::MatrixXd& train_contexts() const { return train_contexts_; }
  const Eigen::MatrixXd& test_contexts() const { return test_contexts_; }
  const std::vector<int>& train_labels() const { return train_labels_; }
  const std::vector<int>& test_labels() const { return test_labels_; }
  const HiddenPostHocModel& posthoc_model() const { return posthoc_model_; }
  const PcaModel& pca() const { return pca_; }

  // Redraws phi_star (and the label-to-posthoc table) without refitting the
  // PCA; used by multi-seed experiment runs.
  void reseed_posthoc(std::uint64_t seed, double condition_bound = 1e6);

  static Eigen::VectorXd full_loss_for_label(int label);
  const Eigen::VectorXd& posthoc_for_label(int label) const { return posthoc_by_label_.at(label); }

 private:
  EnvStep step(const Eigen::MatrixXd& contexts, const std::vector<int>& labels, std::size_t index) const;

  Eigen::MatrixXd train_contexts_, test_contexts_;
  std::vector<int> train_labels_, test_labels_;
  HiddenPostHocModel posthoc_model_;
  std::vector<Eigen::VectorXd> posthoc_by_label_;
  PcaModel pca_;
};

}  // namespace posthoc
