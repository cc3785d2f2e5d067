#pragma once

#include <erdlab/config.hpp>
#include <erdlab/report.hpp>

namespace erdlab {

/// Subcommand bodies. Each creates out_dir if needed, writes its artifact
/// family, and registers every emitted file with the recorder; the caller
/// owns manifest writing and exit-code mapping. Missing-checkpoint and I/O
/// problems surface as std::runtime_error with path context.

/// Global + piecewise training: checkpoints, metrics.csv (+ per-bin
/// metrics), loss_curve.csv and loss_curve_piecewise.csv.
void cmd_train(const ExperimentConfig& config, RunRecorder& recorder);

/// Bayes floors for all four targets on the t grid; empirical MSE and excess
/// for the configured target when a checkpoint exists (skipped under
/// oracle_only). Piecewise variant written when bin checkpoints exist.
void cmd_bayes(const ExperimentConfig& config, RunRecorder& recorder);

/// Per-sample signal/noise norms for all four targets across the t grid.
void cmd_phase(const ExperimentConfig& config, RunRecorder& recorder);

/// Fixed-noise NTK spectra over the ntk t grid plus joint heatmaps over
/// heatmap_times; requires the global checkpoint.
void cmd_ntk(const ExperimentConfig& config, RunRecorder& recorder);

/// Hidden-feature PCA: basis fit at t = 0.1, projections at pca_times;
/// requires the global checkpoint.
void cmd_pca(const ExperimentConfig& config, RunRecorder& recorder);

/// Trains one model per weight rule with the shared seed and reports per-t
/// and aggregate excess for each.
void cmd_compare(const ExperimentConfig& config, RunRecorder& recorder);

/// train, bayes, phase, ntk, pca, compare in sequence, each timed; throws on
/// the first failure so the caller can write a partial manifest.
void cmd_all(const ExperimentConfig& config, RunRecorder& recorder);

}  // namespace erdlab
