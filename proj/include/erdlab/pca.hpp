#pragma once

#include <erdlab/types.hpp>

namespace erdlab {

struct PcaBasis {
  Vector mean;
  Matrix components;           // dim x k, orthonormal columns
  Vector explained_variance;   // k entries, non-increasing
};

/// Top-k principal components of the rows of features via mean-centered
/// sample covariance; requires rows > k and k <= cols.
PcaBasis pca_fit(const Matrix& features, int k);

/// Coordinates (features - mean) * components, one row per feature row.
Matrix pca_project(const PcaBasis& basis, const Matrix& features);

}  // namespace erdlab
