#include <erdlab/eig.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace erdlab {

namespace {

Scalar off_diagonal_norm(const Matrix& a) {
  Scalar acc = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const Scalar apq = a(p, q);
  if (apq == 0.0) return;
  const Scalar theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const Scalar t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const Scalar c = 1.0 / std::sqrt(t * t + 1.0);
  const Scalar s = t * c;

  const Scalar app = a(p, p);
  const Scalar aqq = a(q, q);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (i == p || i == q) continue;
    const Scalar aip = a(i, p);
    const Scalar aiq = a(i, q);
    a(i, p) = c * aip - s * aiq;
    a(p, i) = a(i, p);
    a(i, q) = s * aip + c * aiq;
    a(q, i) = a(i, q);
  }
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const Scalar vip = v(i, p);
    const Scalar viq = v(i, q);
    v(i, p) = c * vip - s * viq;
    v(i, q) = s * vip + c * viq;
  }
}

}  // namespace

EigResult sym_eig(Matrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sym_eig: matrix must be square");
  const Eigen::Index n = a.rows();
  a = (0.5 * (a + a.transpose())).eval();
  Matrix v = Matrix::Identity(n, n);
  const Scalar threshold = 1e-12 * a.norm();

  constexpr int kMaxSweeps = 100;
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) throw std::runtime_error("sym_eig: no convergence within 100 sweeps");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  EigResult result{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    result.values(i) = a(order[i], order[i]);
    result.vectors.col(i) = v.col(order[i]);
  }
  return result;
}

}  // namespace erdlab
