#include "posthoc/mnist_env.hpp"

#include <stdexcept>

#include "posthoc/idx.hpp"

namespace posthoc {

MnistEnv MnistEnv::load(const std::string& data_dir, int context_dim, std::uint64_t seed,
                        double condition_bound) {
  const Eigen::MatrixXd train_images = read_idx_images(data_dir + "/train-images-idx3-ubyte");
  const Eigen::MatrixXd test_images = read_idx_images(data_dir + "/t10k-images-idx3-ubyte");

  MnistEnv env;
  env.train_labels_ = read_idx_labels(data_dir + "/train-labels-idx1-ubyte");
  env.test_labels_ = read_idx_labels(data_dir + "/t10k-labels-idx1-ubyte");
  if (static_cast<Eigen::Index>(env.train_labels_.size()) != train_images.rows() ||
      static_cast<Eigen::Index>(env.test_labels_.size()) != test_images.rows())
    throw std::runtime_error("MnistEnv: image/label counts do not match");

  env.pca_ = pca_fit(train_images, context_dim);
  env.train_contexts_ = pca_transform(env.pca_, train_images);
  env.test_contexts_ = pca_transform(env.pca_, test_images);

  env.reseed_posthoc(seed, condition_bound);
  return env;
}

void MnistEnv::reseed_posthoc(std::uint64_t seed, double condition_bound) {
  posthoc_model_ = generate_phi_star(kNumActions, kNumActions, seed, condition_bound);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(posthoc_model_.phi_star.transpose());
  posthoc_by_label_.clear();
  posthoc_by_label_.reserve(kNumActions);
  for (int label = 0; label < kNumActions; ++label)
    posthoc_by_label_.push_back(lu.solve(full_loss_for_label(label)));
}

Eigen::VectorXd MnistEnv::full_loss_for_label(int label) {
  Eigen::VectorXd loss = Eigen::VectorXd::Ones(kNumActions);
  loss(label) = 0.0;
  return loss;
}

EnvStep MnistEnv::step(const Eigen::MatrixXd& contexts, const std::vector<int>& labels,
                       std::size_t index) const {
  if (index >= labels.size()) throw std::out_of_range("MnistEnv: index out of range");
  EnvStep out;
  out.context = contexts.row(static_cast<Eigen::Index>(index)).transpose();
  out.full_loss = full_loss_for_label(labels[index]);
  out.posthoc = posthoc_by_label_[labels[index]];
  return out;
}

}  // namespace posthoc
