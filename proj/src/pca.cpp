#include "posthoc/pca.hpp"

#include <stdexcept>
#include <string>

namespace posthoc {

PcaModel pca_fit(const Eigen::MatrixXd& data, int num_components) {
  const Eigen::Index n = data.rows();
  const Eigen::Index dim = data.cols();
  if (num_components < 1 || num_components > dim)
    throw std::invalid_argument("pca_fit: num_components out of range");

  PcaModel model;
  model.mean = data.colwise().mean();

  // Scatter matrix of the centered data without materializing the centered
  // copy: Xc^T Xc = X^T X - n * mean mean^T.
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(dim, dim);
  scatter.selfadjointView<Eigen::Lower>().rankUpdate(data.transpose());
  scatter.triangularView<Eigen::StrictlyUpper>() = scatter.transpose();
  scatter.noalias() -= static_cast<double>(n) * model.mean * model.mean.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scatter);
  if (eig.info() != Eigen::Success) throw std::runtime_error("pca_fit: eigendecomposition failed");

  model.eigenvalues.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) model.eigenvalues(i) = eig.eigenvalues()(dim - 1 - i);

  const double tol = 1e-9 * std::max(1.0, model.eigenvalues(0));
  if (model.eigenvalues(num_components - 1) <= tol)
    throw std::runtime_error("pca_fit: data spans fewer than " + std::to_string(num_components) +
                             " dimensions");

  model.components.resize(num_components, dim);
  for (int i = 0; i < num_components; ++i) {
    Eigen::VectorXd v = eig.eigenvectors().col(dim - 1 - i);
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    if (v(lead) < 0.0) v = -v;
    model.components.row(i) = v.transpose();
  }
  return model;
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& data) {
  if (data.cols() != model.mean.size())
    throw std::invalid_argument("pca_transform: dimension mismatch");
  return (data.rowwise() - model.mean.transpose()) * model.components.transpose();
}

}  // namespace posthoc
