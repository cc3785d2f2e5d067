#pragma once

#include <erdlab/types.hpp>

namespace erdlab {

struct EigResult {
  Vector values;   // descending
  Matrix vectors;  // columns are eigenvectors, A = V diag(values) V^T
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. The input is
/// symmetrized first; sweeps stop once the off-diagonal Frobenius norm falls
/// below 1e-12 * ||A||, capped at 100 sweeps. Throws std::invalid_argument
/// for non-square input.
EigResult sym_eig(Matrix a);

}  // namespace erdlab
