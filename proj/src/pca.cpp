#include <erdlab/pca.hpp>

#include <stdexcept>

#include <erdlab/eig.hpp>

namespace erdlab {

PcaBasis pca_fit(const Matrix& features, int k) {
  const Eigen::Index n = features.rows();
  const Eigen::Index dim = features.cols();
  if (k < 1 || k > dim) throw std::invalid_argument("pca_fit: k must be in [1, feature dim]");
  if (n <= k) throw std::invalid_argument("pca_fit: need more samples than components");

  PcaBasis basis;
  basis.mean = features.colwise().mean();
  const Matrix centered = features.rowwise() - basis.mean.transpose();
  const Matrix cov = (centered.transpose() * centered) / static_cast<Scalar>(n - 1);
  const EigResult eig = sym_eig(cov);
  basis.components = eig.vectors.leftCols(k);
  basis.explained_variance = eig.values.head(k);
  return basis;
}

Matrix pca_project(const PcaBasis& basis, const Matrix& features) {
  if (features.cols() != basis.mean.size())
    throw std::invalid_argument("pca_project: feature dimension does not match basis");
  return (features.rowwise() - basis.mean.transpose()) * basis.components;
}

}  // namespace erdlab
