#pragma once

#include <Eigen/Core>

namespace erdlab {

using Scalar = double;

template <class T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<Scalar>;
using Vector = DenseVector<Scalar>;
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

}  // namespace erdlab
