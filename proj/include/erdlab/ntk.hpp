#pragma once

#include <cstdint>
#include <vector>

#include <erdlab/mlp.hpp>

namespace erdlab {

struct NtkPoint {
  Vector x;
  Scalar t = 0.0;
};

/// Empirical tangent-kernel Gram over evaluation points. block(i*d+r, j*d+s)
/// is the (r,s) entry of Theta((x_i,t_i),(x_j,t_j)) = J_i J_j^T; scalar is
/// the n x n matrix of block traces / d. Points spanning several t values
/// make this the joint kernel.
struct NtkGram {
  Matrix block;   // (n*d) x (n*d)
  Matrix scalar;  // n x n
  std::vector<NtkPoint> points;
  std::uint64_t model_seed = 0;
};

NtkGram ntk_gram(const MlpModel& model, const std::vector<NtkPoint>& points);

/// Top-k eigenvalues of the block matrix, descending. k must not exceed n*d.
Vector ntk_spectrum(const NtkGram& gram, int k);

/// exp(Shannon entropy) of the eigenvalue distribution; eigenvalues at or
/// below the 1e-12 floor are dropped. Throws std::runtime_error when the
/// whole spectrum is below the floor.
Scalar effective_rank(const Eigen::Ref<const Vector>& eigenvalues);

/// H_ij = k_ij / sqrt(k_ii k_jj) from the scalarized matrix; unit diagonal.
/// Throws std::runtime_error on a non-positive diagonal entry.
Matrix normalized_heatmap(const NtkGram& gram);

}  // namespace erdlab
