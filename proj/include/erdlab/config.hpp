#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <erdlab/mlp.hpp>
#include <erdlab/schedule.hpp>
#include <erdlab/target.hpp>
#include <erdlab/weight.hpp>

namespace erdlab {

/// Malformed or inconsistent configuration; the CLI maps this to a usage
/// error exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full experiment configuration, read from a plain-text file with one
/// `key = value` per line and `#` comments. Every key is optional; defaults
/// below. List values are comma-separated.
struct ExperimentConfig {
  Schedule schedule = Schedule::linear();
  TargetKind target = TargetKind::X0;
  WeightKind weight = WeightKind::Uniform;
  Scalar gamma = 5.0;

  int iterations = 2000;
  int batch = 512;
  Scalar lr = 1e-3;
  Scalar adam_beta1 = 0.9;
  Scalar adam_beta2 = 0.999;
  Scalar adam_eps = 1e-8;
  Scalar t_lo = 0.0;
  Scalar t_hi = 1.0;
  std::uint64_t seed = 0;

  int embed_dim = 64;
  int hidden_dim = 256;
  int depth = 3;

  std::string out_dir = "out";
  int t_grid_size = 101;
  long n_mc = 100000;
  long eval_mc = 2048;
  bool plot = false;
  bool oracle_only = false;
  int bins = 5;

  int ntk_points = 64;
  int ntk_t_grid = 21;
  std::vector<Scalar> heatmap_times = {0.05, 0.35, 0.65, 0.95};
  std::vector<Scalar> pca_times = {0.1, 0.4, 0.7, 0.9};
  int pca_samples = 256;
  int phase_samples = 256;

  MlpConfig net() const { return MlpConfig{2, embed_dim, hidden_dim, depth}; }
};

/// Parses config text; origin labels error messages (e.g. a file name).
/// Throws ConfigError on unknown keys, malformed lines, or invalid values.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "config");

/// Reads and parses a config file; throws ConfigError with path context.
ExperimentConfig load_config(const std::string& path);

/// Throws ConfigError if any field violates its invariants.
void validate(const ExperimentConfig& config);

/// Every key with its current value, in documented order; the manifest's
/// config snapshot.
std::vector<std::pair<std::string, std::string>> config_snapshot(const ExperimentConfig& config);

}  // namespace erdlab
