#pragma once

#include <Eigen/Dense>

namespace posthoc {

// Orthonormal projection onto the top principal components of a training set.
// Rows of `components` follow the sign convention that each row's
// largest-magnitude entry is positive.
struct PcaModel {
  Eigen::MatrixXd components;  // d_c x original_dim
  Eigen::VectorXd mean;        // original_dim
  Eigen::VectorXd eigenvalues; // all eigenvalues of the scatter matrix, descending
};

// Fits on rows of `data` (one sample per row). Throws if the data spans
// fewer than `num_components` dimensions.
PcaModel pca_fit(const Eigen::MatrixXd& data, int num_components);

// Projects rows of `data` onto the retained components after centering.
Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& data);

}  // namespace posthoc
