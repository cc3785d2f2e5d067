#include <erdlab/gmm.hpp>

#include <cmath>
#include <stdexcept>

#include <erdlab/parallel.hpp>

namespace erdlab {

namespace {

void check_point(const GmmModel& gmm, const Eigen::Ref<const Vector>& x_t) {
  if (x_t.size() != gmm.dim())
    throw std::invalid_argument("gmm: point dimension " + std::to_string(x_t.size()) +
                                " does not match mixture dimension " + std::to_string(gmm.dim()));
}

/// Draw order per sample: component index, then d center-noise normals,
/// then (when the caller needs it) d noise normals. Fixing this order is
/// what makes sharded estimators reproducible.
void draw_x0(const GmmModel& gmm, Rng& rng, Vector& x0, int* label) {
  const int k = rng.uniform_int(gmm.components());
  if (label != nullptr) *label = k;
  for (int j = 0; j < gmm.dim(); ++j) x0(j) = gmm.centers(k, j) + gmm.sigma0 * rng.normal();
}

void draw_normal(Rng& rng, Vector& out) {
  for (int j = 0; j < out.size(); ++j) out(j) = rng.normal();
}

}  // namespace

GmmModel GmmModel::make(Matrix centers, Scalar sigma0) {
  if (centers.rows() < 1) throw std::invalid_argument("GmmModel: need at least one center");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("GmmModel: sigma0 must be positive");
  GmmModel gmm;
  gmm.weights = Vector::Constant(centers.rows(), 1.0 / static_cast<Scalar>(centers.rows()));
  gmm.centers = std::move(centers);
  gmm.sigma0 = sigma0;
  return gmm;
}

GmmModel GmmModel::four_clusters() {
  Matrix centers(4, 2);
  centers << 2.0, 2.0, 2.0, -2.0, -2.0, 2.0, -2.0, -2.0;
  return make(std::move(centers), 0.3);
}

Scalar second_moment(const GmmModel& gmm) {
  return gmm.weights.dot(gmm.centers.rowwise().squaredNorm()) +
         gmm.dim() * gmm.sigma0 * gmm.sigma0;
}

Matrix sample_x0(const GmmModel& gmm, long count, Rng& rng, std::vector<int>* labels) {
  if (count < 1) throw std::invalid_argument("sample_x0: count must be >= 1");
  Matrix out(count, gmm.dim());
  if (labels != nullptr) labels->resize(count);
  Vector row(gmm.dim());
  for (long i = 0; i < count; ++i) {
    draw_x0(gmm, rng, row, labels != nullptr ? &(*labels)[i] : nullptr);
    out.row(i) = row;
  }
  return out;
}

Vector posterior_responsibilities(const GmmModel& gmm, const Schedule& schedule, Scalar t,
                                  const Eigen::Ref<const Vector>& x_t) {
  check_point(gmm, x_t);
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const Scalar s2 = alpha * alpha * gmm.sigma0 * gmm.sigma0 + sigma * sigma;
  const int K = gmm.components();
  Vector logp(K);
  for (int k = 0; k < K; ++k) {
    const Scalar d2 = (x_t - alpha * gmm.centers.row(k).transpose()).squaredNorm();
    logp(k) = std::log(gmm.weights(k)) - 0.5 * d2 / s2;
  }
  const Vector shifted = (logp.array() - logp.maxCoeff()).exp();
  return shifted / shifted.sum();
}

Vector posterior_mean_x0(const GmmModel& gmm, const Schedule& schedule, Scalar t,
                         const Eigen::Ref<const Vector>& x_t) {
  const Vector resp = posterior_responsibilities(gmm, schedule, t, x_t);
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const Scalar s2 = alpha * alpha * gmm.sigma0 * gmm.sigma0 + sigma * sigma;
  const Scalar shrink = alpha * gmm.sigma0 * gmm.sigma0 / s2;
  const Vector mean_center = gmm.centers.transpose() * resp;
  return mean_center + shrink * (x_t - alpha * mean_center);
}

Vector bayes_predictor(const GmmModel& gmm, TargetKind target, const Schedule& schedule, Scalar t,
                       const Eigen::Ref<const Vector>& x_t) {
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const auto [cx, ceps] = target_coeffs(target, schedule, t);
  const Vector ex0 = posterior_mean_x0(gmm, schedule, t, x_t);
  if (sigma == 0.0) return cx * ex0;
  const Vector eeps = (x_t - alpha * ex0) / sigma;
  return cx * ex0 + ceps * eeps;
}

McEstimate bayes_floor(const GmmModel& gmm, TargetKind target, const Schedule& schedule, Scalar t,
                       long n_mc, Rng& rng) {
  if (n_mc < 1) throw std::invalid_argument("bayes_floor: n_mc must be >= 1");
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const auto [cx, ceps] = target_coeffs(target, schedule, t);
  const std::uint64_t base = rng.next_u64();
  const int shards = shard_count();
  std::vector<Scalar> sum(shards, 0.0), sum_sq(shards, 0.0);
  for_each_shard(n_mc, shards, [&](int shard, long, long count) {
    Rng local = Rng::stream(base, static_cast<std::uint64_t>(shard));
    Vector x0(gmm.dim()), eps(gmm.dim());
    Scalar acc = 0.0, acc_sq = 0.0;
    for (long i = 0; i < count; ++i) {
      draw_x0(gmm, local, x0, nullptr);
      draw_normal(local, eps);
      const Vector x_t = alpha * x0 + sigma * eps;
      const Vector y = cx * x0 + ceps * eps;
      const Scalar se = (bayes_predictor(gmm, target, schedule, t, x_t) - y).squaredNorm();
      acc += se;
      acc_sq += se * se;
    }
    sum[shard] = acc;
    sum_sq[shard] = acc_sq;
  });
  Scalar total = 0.0, total_sq = 0.0;
  for (int shard = 0; shard < shards; ++shard) {
    total += sum[shard];
    total_sq += sum_sq[shard];
  }
  const Scalar n = static_cast<Scalar>(n_mc);
  const Scalar mean = total / n;
  const Scalar var = std::max(0.0, total_sq / n - mean * mean);
  return McEstimate{mean, std::sqrt(var / n)};
}

std::vector<BayesDecomposition> signal_noise_decomposition(const GmmModel& gmm, TargetKind target,
                                                           const Schedule& schedule, Scalar t,
                                                           const Matrix& x0, const Matrix& eps) {
  if (x0.rows() != eps.rows() || x0.cols() != eps.cols())
    throw std::invalid_argument("signal_noise_decomposition: x0 and eps shapes differ");
  if (x0.cols() != gmm.dim())
    throw std::invalid_argument("signal_noise_decomposition: sample dimension mismatch");
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const auto [cx, ceps] = target_coeffs(target, schedule, t);
  std::vector<BayesDecomposition> out(x0.rows());
  for (Eigen::Index i = 0; i < x0.rows(); ++i) {
    const Vector x_t = alpha * x0.row(i).transpose() + sigma * eps.row(i).transpose();
    const Vector y = cx * x0.row(i).transpose() + ceps * eps.row(i).transpose();
    const Vector f = bayes_predictor(gmm, target, schedule, t, x_t);
    out[i] = BayesDecomposition{f.norm(), (y - f).norm()};
  }
  return out;
}

std::pair<Scalar, Scalar> w2_coupling_cost(const GmmModel& gmm, const Schedule& schedule, Scalar t,
                                           long n_mc, Rng& rng) {
  if (n_mc < 1) throw std::invalid_argument("w2_coupling_cost: n_mc must be >= 1");
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const Scalar shift = sigma - sigma_max(schedule);
  const std::uint64_t base = rng.next_u64();
  const int shards = shard_count();
  std::vector<Scalar> sum(shards, 0.0);
  for_each_shard(n_mc, shards, [&](int shard, long, long count) {
    Rng local = Rng::stream(base, static_cast<std::uint64_t>(shard));
    Vector x0(gmm.dim()), eps(gmm.dim());
    Scalar acc = 0.0;
    for (long i = 0; i < count; ++i) {
      draw_x0(gmm, local, x0, nullptr);
      draw_normal(local, eps);
      acc += (alpha * x0 + shift * eps).squaredNorm();
    }
    sum[shard] = acc;
  });
  Scalar total = 0.0;
  for (int shard = 0; shard < shards; ++shard) total += sum[shard];
  const Scalar empirical = total / static_cast<Scalar>(n_mc);
  const Scalar analytic = alpha * alpha * second_moment(gmm) + shift * shift * gmm.dim();
  return {empirical, analytic};
}

}  // namespace erdlab
