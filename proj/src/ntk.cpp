#include <erdlab/ntk.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <erdlab/eig.hpp>
#include <erdlab/parallel.hpp>

namespace erdlab {

NtkGram ntk_gram(const MlpModel& model, const std::vector<NtkPoint>& points) {
  if (points.empty()) throw std::invalid_argument("ntk_gram: need at least one point");
  const int d = model.config.data_dim;
  const long p_count = model.params.size();
  const long n = static_cast<long>(points.size());
  for (const NtkPoint& pt : points)
    if (pt.x.size() != d) throw std::invalid_argument("ntk_gram: point dimension mismatch");

  NtkGram gram;
  gram.points = points;
  gram.model_seed = model.seed;
  gram.block.resize(n * d, n * d);

  // Row tiles keep at most two Jacobian slabs in memory; Jacobians for the
  // right tile are recomputed per pair, which is cheap next to the products.
  constexpr long kTile = 32;
  const long tiles = (n + kTile - 1) / kTile;
  auto fill = [&](long begin, long count, Matrix& slab) {
    slab.resize(count * d, p_count);
    const int shards = std::min<long>(shard_count(), count);
    for_each_shard(count, shards, [&](int, long lo, long cnt) {
      for (long i = lo; i < lo + cnt; ++i)
        slab.middleRows(i * d, d) =
            param_jacobian(model, points[begin + i].x, points[begin + i].t);
    });
  };

  Matrix left, right;
  for (long ti = 0; ti < tiles; ++ti) {
    const long ra = ti * kTile;
    const long ca = std::min(kTile, n - ra);
    fill(ra, ca, left);
    for (long tj = ti; tj < tiles; ++tj) {
      const long rb = tj * kTile;
      const long cb = std::min(kTile, n - rb);
      if (tj == ti) {
        Matrix prod = left * left.transpose();
        gram.block.block(ra * d, ra * d, ca * d, ca * d) = 0.5 * (prod + prod.transpose());
      } else {
        fill(rb, cb, right);
        const Matrix prod = left * right.transpose();
        gram.block.block(ra * d, rb * d, ca * d, cb * d) = prod;
        gram.block.block(rb * d, ra * d, cb * d, ca * d) = prod.transpose();
      }
    }
  }

  gram.scalar.resize(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Scalar trace = 0.0;
      for (int r = 0; r < d; ++r) trace += gram.block(i * d + r, j * d + r);
      gram.scalar(i, j) = trace / d;
    }
  return gram;
}

Vector ntk_spectrum(const NtkGram& gram, int k) {
  if (k < 1 || k > gram.block.rows())
    throw std::invalid_argument("ntk_spectrum: k must be in [1, n*d]");
  return sym_eig(gram.block).values.head(k);
}

Scalar effective_rank(const Eigen::Ref<const Vector>& eigenvalues) {
  constexpr Scalar kFloor = 1e-12;
  Scalar total = 0.0;
  std::vector<Scalar> kept;
  kept.reserve(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > kFloor) {
      kept.push_back(eigenvalues(i));
      total += eigenvalues(i);
    }
  if (kept.empty())
    throw std::runtime_error("effective_rank: degenerate spectrum, nothing above the 1e-12 floor");
  Scalar entropy = 0.0;
  for (const Scalar v : kept) {
    const Scalar p = v / total;
    entropy -= p * std::log(p);
  }
  return std::exp(entropy);
}

Matrix normalized_heatmap(const NtkGram& gram) {
  const Eigen::Index n = gram.scalar.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(gram.scalar(i, i) > 0.0))
      throw std::runtime_error("normalized_heatmap: degenerate kernel, non-positive diagonal");
  const Vector root = gram.scalar.diagonal().cwiseSqrt();
  Matrix h = gram.scalar.array() / (root * root.transpose()).array();
  h.diagonal().setOnes();
  return h;
}

}  // namespace erdlab
