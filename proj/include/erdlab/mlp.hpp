#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <erdlab/rng.hpp>
#include <erdlab/types.hpp>

namespace erdlab {

struct MlpConfig {
  int data_dim = 2;
  int embed_dim = 64;
  int hidden_dim = 256;
  int depth = 3;  // hidden layers before the linear readout

  int in_dim() const { return data_dim + embed_dim; }
  long param_count() const;
};

/// Time-conditioned MLP f(x, t): [x; embed(t)] -> depth SiLU layers of width
/// hidden_dim -> linear readout to data_dim. Parameters live in one flat
/// vector; layer views are Eigen maps into it (column-major weights).
struct MlpModel {
  MlpConfig config;
  Vector params;
  std::uint64_t seed = 0;

  /// Layers 0..depth-1 are hidden, layer depth is the readout.
  Eigen::Map<Matrix> weight(int layer);
  Eigen::Map<const Matrix> weight(int layer) const;
  Eigen::Map<Vector> bias(int layer);
  Eigen::Map<const Vector> bias(int layer) const;
};

/// Kaiming init: weights N(0, 2/fan_in), biases 0; deterministic in seed.
MlpModel init(const MlpConfig& config, std::uint64_t seed);

/// Sinusoidal embedding: pairs [sin(w_i t 1000), cos(w_i t 1000)],
/// w_i = 10000^(-i/(embed_dim/2)). ||embed(t)||^2 = embed_dim/2.
Vector time_embed(Scalar t, int embed_dim = 64);

/// Single-sample forward; returns (output, last pre-readout activation).
/// Throws std::invalid_argument on non-finite input.
std::pair<Vector, Vector> forward(const MlpModel& model, const Eigen::Ref<const Vector>& x,
                                  Scalar t);

/// Batched forward over rows of x; outputs and hidden features as rows.
struct BatchOutput {
  Matrix output;  // n x data_dim
  Matrix hidden;  // n x hidden_dim
};
BatchOutput forward_batch(const MlpModel& model, const Matrix& x, const Vector& t);

struct Batch {
  Matrix x;  // n x data_dim
  Vector t;  // n
  Matrix y;  // n x data_dim
  Vector w;  // n
};

/// loss = mean_i (w_i/2) ||f(x_i,t_i) - y_i||^2 and its exact gradient.
std::pair<Scalar, Vector> loss_grad(const MlpModel& model, const Batch& batch);

/// Rows are gradients of each output coordinate w.r.t. the flat parameters.
Matrix param_jacobian(const MlpModel& model, const Eigen::Ref<const Vector>& x, Scalar t);

/// Checkpoint I/O. Binary layout (little-endian):
///   bytes 0..7   magic "ERDLCKPT"
///   u32 version (1), u32 activation tag (0 = SiLU)
///   u32 data_dim, u32 embed_dim, u32 hidden_dim, u32 depth
///   u64 seed, u64 param_count
///   f64[param_count] parameters
void save_checkpoint(const MlpModel& model, const std::string& path);
MlpModel load_checkpoint(const std::string& path);

}  // namespace erdlab
