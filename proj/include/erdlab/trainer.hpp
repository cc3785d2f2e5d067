#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <erdlab/gmm.hpp>
#include <erdlab/mlp.hpp>
#include <erdlab/weight.hpp>

namespace erdlab {

struct TrainConfig {
  MlpConfig net;
  TargetKind target = TargetKind::Eps;
  Schedule schedule = Schedule::linear();
  WeightKind weight = WeightKind::Uniform;
  Scalar gamma = 5.0;  // ClampedSnr knee
  int iterations = 2000;
  int batch = 512;
  Scalar lr = 1e-3;
  Scalar adam_beta1 = 0.9;
  Scalar adam_beta2 = 0.999;
  Scalar adam_eps = 1e-8;
  Scalar t_lo = 0.0;
  Scalar t_hi = 1.0;
  std::uint64_t seed = 0;
};

struct MetricLog {
  std::vector<Scalar> loss;  // one entry per iteration, in order
};

/// Raised when training produces a non-finite loss or parameter.
class TrainingFault : public std::runtime_error {
 public:
  TrainingFault(int iteration, const std::string& message)
      : std::runtime_error("training fault at iteration " + std::to_string(iteration) + ": " +
                           message),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

/// Adam on the weighted objective with fresh data every step: per iteration
/// draw x0, eps ~ N(0,I), t ~ Uniform[t_lo, t_hi], form x_t and y, and step
/// on loss_grad. Deterministic in config.seed (init and data use separate
/// derived streams).
std::pair<MlpModel, MetricLog> train(const TrainConfig& config, const GmmModel& gmm);

/// count equal-width bins partitioning [0, 1].
std::vector<std::pair<Scalar, Scalar>> equal_bins(int count);

struct BinResult {
  Scalar t_lo = 0.0;
  Scalar t_hi = 1.0;
  MlpModel model;
  MetricLog log;
};

/// One independent model per bin, t restricted to the bin. Bin i trains with
/// seed = config.seed + i * 0x9E3779B97F4A7C15, so [[0,1]] reproduces
/// train() exactly. Bins must tile [0,1] left to right. Bins may run in
/// parallel (ERDLAB_THREADS); results do not depend on the parallelism.
std::vector<BinResult> train_piecewise(const TrainConfig& config,
                                       const std::vector<std::pair<Scalar, Scalar>>& bins,
                                       const GmmModel& gmm);

/// Unweighted MSE E||f(x_t,t) - y||^2 per grid t by Monte Carlo, with
/// standard errors; pair with bayes_floor for excess curves.
std::vector<McEstimate> evaluate_loss_curve(const MlpModel& model, const GmmModel& gmm,
                                            TargetKind target, const Schedule& schedule,
                                            const std::vector<Scalar>& t_grid, long n_mc,
                                            Rng& rng);

/// Same evaluation for an arbitrary predictor mapping (x_t rows, t) to
/// prediction rows; lets oracle substitutes stand in for a trained model.
using Predictor = std::function<Matrix(const Matrix&, Scalar)>;
std::vector<McEstimate> evaluate_loss_curve(const Predictor& predictor, const GmmModel& gmm,
                                            TargetKind target, const Schedule& schedule,
                                            const std::vector<Scalar>& t_grid, long n_mc,
                                            Rng& rng);

}  // namespace erdlab
