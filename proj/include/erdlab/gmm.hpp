#pragma once

#include <utility>
#include <vector>

#include <erdlab/rng.hpp>
#include <erdlab/schedule.hpp>
#include <erdlab/target.hpp>

namespace erdlab {

/// Isotropic Gaussian mixture in R^d: x0 ~ sum_k pi_k N(mu_k, sigma0^2 I).
struct GmmModel {
  Matrix centers;  // K x d
  Vector weights;  // K entries, nonnegative, summing to 1
  Scalar sigma0 = 0.3;

  /// Uniform-weight mixture; throws std::invalid_argument on K=0 or sigma0<=0.
  static GmmModel make(Matrix centers, Scalar sigma0);

  /// Four clusters at (+-2, +-2) with sigma0 = 0.3.
  static GmmModel four_clusters();

  int components() const { return static_cast<int>(centers.rows()); }
  int dim() const { return static_cast<int>(centers.cols()); }
};

/// E||x0||^2 = sum_k pi_k ||mu_k||^2 + d * sigma0^2.
Scalar second_moment(const GmmModel& gmm);

struct McEstimate {
  Scalar mean = 0.0;
  Scalar std_error = 0.0;
};

/// Per-sample norms of the recoverable and irreducible parts of the target:
/// signal_norm = ||E[y|x_t]||, noise_norm = ||y - E[y|x_t]||.
struct BayesDecomposition {
  Scalar signal_norm = 0.0;
  Scalar noise_norm = 0.0;
};

/// count i.i.d. draws as rows; labels (if given) receive the generating
/// component index per row.
Matrix sample_x0(const GmmModel& gmm, long count, Rng& rng, std::vector<int>* labels = nullptr);

/// p(k | x_t) under x_t = alpha x0 + sigma eps, log-sum-exp stabilized.
Vector posterior_responsibilities(const GmmModel& gmm, const Schedule& schedule, Scalar t,
                                  const Eigen::Ref<const Vector>& x_t);

/// E[x0 | x_t].
Vector posterior_mean_x0(const GmmModel& gmm, const Schedule& schedule, Scalar t,
                         const Eigen::Ref<const Vector>& x_t);

/// f*(x_t) = E[y | x_t] for y = c_x x0 + c_eps eps. Uses the sigma -> 0
/// limit E[eps | x_t] = 0 when sigma(t) = 0.
Vector bayes_predictor(const GmmModel& gmm, TargetKind target, const Schedule& schedule, Scalar t,
                       const Eigen::Ref<const Vector>& x_t);

/// Monte-Carlo estimate of the irreducible MSE E||f*(x_t) - y||^2 over
/// (x0, eps) pairs, with its standard error. Sharded per ERDLAB_THREADS.
McEstimate bayes_floor(const GmmModel& gmm, TargetKind target, const Schedule& schedule, Scalar t,
                       long n_mc, Rng& rng);

/// Row-wise decomposition for given (x0, eps) pairs at time t.
std::vector<BayesDecomposition> signal_noise_decomposition(const GmmModel& gmm, TargetKind target,
                                                           const Schedule& schedule, Scalar t,
                                                           const Matrix& x0, const Matrix& eps);

/// Input-degeneration coupling cost at time t against the terminal noise
/// level sigma_max = sigma(1):
///   empirical = MC mean of ||alpha x0 + (sigma - sigma_max) eps||^2
///   analytic  = alpha^2 E||x0||^2 + (sigma - sigma_max)^2 d
std::pair<Scalar, Scalar> w2_coupling_cost(const GmmModel& gmm, const Schedule& schedule, Scalar t,
                                           long n_mc, Rng& rng);

}  // namespace erdlab
