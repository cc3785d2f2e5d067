#include <erdlab/commands.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <utility>
#include <vector>

#include <erdlab/gmm.hpp>
#include <erdlab/ntk.hpp>
#include <erdlab/pca.hpp>
#include <erdlab/svg.hpp>
#include <erdlab/trainer.hpp>

namespace erdlab {
namespace {

// Fixed substream ids per estimator, so any two commands that evaluate the
// same quantity under the same config emit identical numbers.
constexpr std::uint64_t kStreamEvalGlobal = 100;
constexpr std::uint64_t kStreamEvalPiecewise = 101;
constexpr std::uint64_t kStreamFloorBase = 200;  // + target index
constexpr std::uint64_t kStreamPhase = 400;
constexpr std::uint64_t kStreamNtk = 500;
constexpr std::uint64_t kStreamPca = 600;
constexpr std::uint64_t kStreamEvalCompare = 700;  // + weight rule index

constexpr std::array<TargetKind, 4> kAllTargets = {TargetKind::Eps, TargetKind::X0, TargetKind::V,
                                                   TargetKind::U};
constexpr std::array<WeightKind, 3> kAllWeights = {WeightKind::Uniform, WeightKind::Erd,
                                                   WeightKind::ClampedSnr};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

int target_index(TargetKind target) { return static_cast<int>(target); }
int weight_index(WeightKind weight) { return static_cast<int>(weight); }

std::vector<Scalar> linspace(Scalar lo, Scalar hi, int n) {
  std::vector<Scalar> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = lo + (hi - lo) * static_cast<Scalar>(i) / static_cast<Scalar>(n - 1);
  return grid;
}

void ensure_out_dir(const ExperimentConfig& config) {
  std::filesystem::create_directories(config.out_dir);
}

TrainConfig to_train_config(const ExperimentConfig& config) {
  TrainConfig tc;
  tc.net = config.net();
  tc.target = config.target;
  tc.schedule = config.schedule;
  tc.weight = config.weight;
  tc.gamma = config.gamma;
  tc.iterations = config.iterations;
  tc.batch = config.batch;
  tc.lr = config.lr;
  tc.adam_beta1 = config.adam_beta1;
  tc.adam_beta2 = config.adam_beta2;
  tc.adam_eps = config.adam_eps;
  tc.t_lo = config.t_lo;
  tc.t_hi = config.t_hi;
  tc.seed = config.seed;
  return tc;
}

std::string bin_ckpt_name(int i) { return "model_bin" + std::to_string(i) + ".ckpt"; }
std::string bin_metrics_name(int i) { return "metrics_bin" + std::to_string(i) + ".csv"; }

MlpModel load_global_model(const RunRecorder& recorder) {
  const std::string path = recorder.path("model_global.ckpt");
  if (!std::filesystem::exists(path))
    throw std::runtime_error("checkpoint not found: " + path +
                             " (run the train subcommand first)");
  return load_checkpoint(path);
}

struct Piecewise {
  std::vector<std::pair<Scalar, Scalar>> ranges;
  std::vector<MlpModel> models;
};

bool piecewise_available(const ExperimentConfig& config, const RunRecorder& recorder) {
  for (int i = 0; i < config.bins; ++i)
    if (!std::filesystem::exists(recorder.path(bin_ckpt_name(i)))) return false;
  return true;
}

Piecewise load_piecewise(const ExperimentConfig& config, const RunRecorder& recorder) {
  Piecewise pw;
  pw.ranges = equal_bins(config.bins);
  for (int i = 0; i < config.bins; ++i)
    pw.models.push_back(load_checkpoint(recorder.path(bin_ckpt_name(i))));
  return pw;
}

Predictor piecewise_predictor(Piecewise pw) {
  return [pw = std::move(pw)](const Matrix& x, Scalar t) -> Matrix {
    std::size_t pick = pw.ranges.size() - 1;
    for (std::size_t i = 0; i < pw.ranges.size(); ++i) {
      if (t <= pw.ranges[i].second + 1e-12) {
        pick = i;
        break;
      }
    }
    const Vector tv = Vector::Constant(x.rows(), t);
    return forward_batch(pw.models[pick], x, tv).output;
  };
}

Matrix draw_normals(long rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Matrix corrupt_rows(const Schedule& schedule, Scalar t, const Matrix& x0, const Matrix& eps) {
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  return alpha * x0 + sigma * eps;
}

/// Bayes floors over a grid, deterministic in (seed, target).
std::vector<McEstimate> floor_curve(const GmmModel& gmm, TargetKind target,
                                    const Schedule& schedule, const std::vector<Scalar>& grid,
                                    long n_mc, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, kStreamFloorBase + static_cast<std::uint64_t>(target_index(target)));
  std::vector<McEstimate> floors;
  floors.reserve(grid.size());
  for (const Scalar t : grid) floors.push_back(bayes_floor(gmm, target, schedule, t, n_mc, rng));
  return floors;
}

void write_metrics_csv(const std::string& path, const MetricLog& log) {
  CsvFile csv(path, {"iteration", "loss"});
  for (std::size_t i = 0; i < log.loss.size(); ++i) {
    csv.cell(static_cast<long>(i)).cell(log.loss[i]);
    csv.end_row();
  }
  csv.close();
}

void write_loss_curve_csv(const std::string& path, const std::vector<Scalar>& grid,
                          const std::vector<McEstimate>& mse,
                          const std::vector<McEstimate>& floors) {
  CsvFile csv(path, {"t", "mse", "floor", "excess"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.cell(grid[i]).cell(mse[i].mean).cell(floors[i].mean).cell(mse[i].mean - floors[i].mean);
    csv.end_row();
  }
  csv.close();
}

std::string heatmap_label(Scalar t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

}  // namespace

void cmd_train(const ExperimentConfig& config, RunRecorder& recorder) {
  ensure_out_dir(config);
  const GmmModel gmm = GmmModel::four_clusters();
  const TrainConfig tc = to_train_config(config);

  auto [model, log] = train(tc, gmm);
  save_checkpoint(model, recorder.path("model_global.ckpt"));
  recorder.record("model_global.ckpt");
  write_metrics_csv(recorder.path("metrics.csv"), log);
  recorder.record("metrics.csv");

  std::vector<BinResult> bins;
  if (config.bins == 1) {
    // One bin over [0,1] trains with the global seed and reproduces the
    // global model exactly; skip the redundant run.
    bins.push_back({0.0, 1.0, model, log});
  } else {
    bins = train_piecewise(tc, equal_bins(config.bins), gmm);
  }
  for (int i = 0; i < config.bins; ++i) {
    save_checkpoint(bins[i].model, recorder.path(bin_ckpt_name(i)));
    recorder.record(bin_ckpt_name(i));
    write_metrics_csv(recorder.path(bin_metrics_name(i)), bins[i].log);
    recorder.record(bin_metrics_name(i));
  }

  const std::vector<Scalar> grid = linspace(0.0, 1.0, config.t_grid_size);
  const std::vector<McEstimate> floors =
      floor_curve(gmm, config.target, config.schedule, grid, config.n_mc, config.seed);

  Rng eval_rng = Rng::stream(config.seed, kStreamEvalGlobal);
  const std::vector<McEstimate> mse_global = evaluate_loss_curve(
      model, gmm, config.target, config.schedule, grid, config.eval_mc, eval_rng);
  write_loss_curve_csv(recorder.path("loss_curve.csv"), grid, mse_global, floors);
  recorder.record("loss_curve.csv");

  Piecewise pw;
  pw.ranges = equal_bins(config.bins);
  for (auto& bin : bins) pw.models.push_back(bin.model);
  Rng pw_rng = Rng::stream(config.seed, kStreamEvalPiecewise);
  const std::vector<McEstimate> mse_pw =
      evaluate_loss_curve(piecewise_predictor(std::move(pw)), gmm, config.target, config.schedule,
                          grid, config.eval_mc, pw_rng);
  write_loss_curve_csv(recorder.path("loss_curve_piecewise.csv"), grid, mse_pw, floors);
  recorder.record("loss_curve_piecewise.csv");

  if (config.plot) {
    std::vector<SvgSeries> loss_series;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < log.loss.size(); ++i)
      pts.emplace_back(static_cast<double>(i), log.loss[i]);
    loss_series.push_back({"global", std::move(pts), kPalette[0], true});
    for (int i = 0; i < config.bins && i < 7; ++i) {
      std::vector<std::pair<double, double>> bpts;
      for (std::size_t j = 0; j < bins[i].log.loss.size(); ++j)
        bpts.emplace_back(static_cast<double>(j), bins[i].log.loss[j]);
      loss_series.push_back({"bin " + std::to_string(i), std::move(bpts), kPalette[1 + i], true});
    }
    svg_chart(recorder.path("metrics.svg"),
              {"training loss", "iteration", "loss", false, true}, loss_series);
    recorder.record("metrics.svg");

    std::vector<SvgSeries> curve_series(3);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      curve_series[0].points.emplace_back(grid[i], mse_global[i].mean);
      curve_series[1].points.emplace_back(grid[i], mse_pw[i].mean);
      curve_series[2].points.emplace_back(grid[i], floors[i].mean);
    }
    curve_series[0].label = "global mse";
    curve_series[0].color = kPalette[0];
    curve_series[1].label = "piecewise mse";
    curve_series[1].color = kPalette[1];
    curve_series[2].label = "bayes floor";
    curve_series[2].color = kPalette[2];
    svg_chart(recorder.path("loss_curve.svg"),
              {"mse vs bayes floor", "t", "mse", false, false}, curve_series);
    recorder.record("loss_curve.svg");
  }
}

void cmd_bayes(const ExperimentConfig& config, RunRecorder& recorder) {
  ensure_out_dir(config);
  const GmmModel gmm = GmmModel::four_clusters();
  const std::vector<Scalar> grid = linspace(0.0, 1.0, config.t_grid_size);

  std::array<std::vector<McEstimate>, 4> floors;
  for (const TargetKind target : kAllTargets)
    floors[target_index(target)] =
        floor_curve(gmm, target, config.schedule, grid, config.n_mc, config.seed);

  std::vector<McEstimate> empirical;
  std::vector<McEstimate> empirical_pw;
  bool have_model = false;
  bool have_piecewise = false;
  if (!config.oracle_only) {
    const MlpModel model = load_global_model(recorder);
    Rng eval_rng = Rng::stream(config.seed, kStreamEvalGlobal);
    empirical = evaluate_loss_curve(model, gmm, config.target, config.schedule, grid,
                                    config.eval_mc, eval_rng);
    have_model = true;
    if (piecewise_available(config, recorder)) {
      Rng pw_rng = Rng::stream(config.seed, kStreamEvalPiecewise);
      empirical_pw =
          evaluate_loss_curve(piecewise_predictor(load_piecewise(config, recorder)), gmm,
                              config.target, config.schedule, grid, config.eval_mc, pw_rng);
      have_piecewise = true;
    }
  }

  const auto write_file = [&](const std::string& name, const std::vector<McEstimate>& emp,
                              bool have_emp) {
    CsvFile csv(recorder.path(name), {"target", "schedule", "weight", "t", "empirical_mse",
                                      "bayes_floor", "floor_stderr", "excess"});
    for (const TargetKind target : kAllTargets) {
      const auto& curve = floors[target_index(target)];
      const bool fill = have_emp && target == config.target;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.cell(to_string(target)).cell(to_string(config.schedule.kind))
            .cell(to_string(config.weight)).cell(grid[i]);
        if (fill)
          csv.cell(emp[i].mean);
        else
          csv.cell("");
        csv.cell(curve[i].mean).cell(curve[i].std_error);
        if (fill)
          csv.cell(emp[i].mean - curve[i].mean);
        else
          csv.cell("");
        csv.end_row();
      }
    }
    csv.close();
    recorder.record(name);
  };
  write_file("bayes_floor.csv", empirical, have_model);
  if (have_piecewise) write_file("bayes_floor_piecewise.csv", empirical_pw, true);

  if (config.plot) {
    std::vector<SvgSeries> series;
    for (const TargetKind target : kAllTargets) {
      SvgSeries s;
      s.label = std::string("floor ") + to_string(target);
      s.color = kPalette[target_index(target)];
      for (std::size_t i = 0; i < grid.size(); ++i)
        s.points.emplace_back(grid[i], floors[target_index(target)][i].mean);
      series.push_back(std::move(s));
    }
    if (have_model) {
      SvgSeries s;
      s.label = std::string("mse ") + to_string(config.target);
      s.color = kPalette[4];
      s.line = false;
      for (std::size_t i = 0; i < grid.size(); ++i)
        s.points.emplace_back(grid[i], empirical[i].mean);
      series.push_back(std::move(s));
    }
    svg_chart(recorder.path("bayes_floor.svg"),
              {"bayes floors", "t", "mse", false, false}, series);
    recorder.record("bayes_floor.svg");
  }
}

void cmd_phase(const ExperimentConfig& config, RunRecorder& recorder) {
  ensure_out_dir(config);
  const GmmModel gmm = GmmModel::four_clusters();
  const std::vector<Scalar> grid = linspace(0.0, 1.0, config.t_grid_size);

  Rng rng = Rng::stream(config.seed, kStreamPhase);
  const Matrix x0 = sample_x0(gmm, config.phase_samples, rng);
  const Matrix eps = draw_normals(config.phase_samples, gmm.dim(), rng);

  CsvFile csv(recorder.path("phase.csv"),
              {"target", "t", "sample_id", "signal_norm", "noise_norm", "above_diagonal"});
  std::array<std::vector<BayesDecomposition>, 3> plot_rows;
  const std::array<Scalar, 3> plot_times = {0.1, 0.5, 0.9};
  for (const TargetKind target : kAllTargets) {
    for (const Scalar t : grid) {
      const auto decomp = signal_noise_decomposition(gmm, target, config.schedule, t, x0, eps);
      for (std::size_t i = 0; i < decomp.size(); ++i) {
        csv.cell(to_string(target)).cell(t).cell(static_cast<long>(i))
            .cell(decomp[i].signal_norm).cell(decomp[i].noise_norm)
            .cell(decomp[i].noise_norm > decomp[i].signal_norm ? 1 : 0);
        csv.end_row();
      }
      if (config.plot && target == config.target) {
        for (std::size_t k = 0; k < plot_times.size(); ++k) {
          const Scalar nearest =
              grid[static_cast<std::size_t>(std::lround(plot_times[k] * (grid.size() - 1)))];
          if (t == nearest) plot_rows[k] = decomp;
        }
      }
    }
  }
  csv.close();
  recorder.record("phase.csv");

  if (config.plot) {
    std::vector<SvgSeries> series;
    for (std::size_t k = 0; k < plot_times.size(); ++k) {
      SvgSeries s;
      s.label = "t = " + heatmap_label(plot_times[k]);
      s.color = kPalette[k];
      s.line = false;
      for (const auto& d : plot_rows[k]) s.points.emplace_back(d.signal_norm, d.noise_norm);
      series.push_back(std::move(s));
    }
    svg_chart(recorder.path("phase.svg"),
              {std::string("signal vs noise, target ") + to_string(config.target), "signal norm",
               "noise norm", true, false},
              series);
    recorder.record("phase.svg");
  }
}

void cmd_ntk(const ExperimentConfig& config, RunRecorder& recorder) {
  ensure_out_dir(config);
  const GmmModel gmm = GmmModel::four_clusters();
  const MlpModel model = load_global_model(recorder);
  const int n = config.ntk_points;
  const int d = gmm.dim();

  Rng rng = Rng::stream(config.seed, kStreamNtk);
  const Matrix x0 = sample_x0(gmm, n, rng);
  const Matrix eps = draw_normals(n, d, rng);

  const std::vector<Scalar> grid = linspace(0.0, 1.0, config.ntk_t_grid);
  CsvFile csv(recorder.path("ntk_spectrum.csv"),
              {"target", "schedule", "t", "kappa1", "kappa2", "kappa3", "effective_rank"});
  std::vector<std::pair<double, double>> k1, k2, k3, er;
  for (const Scalar t : grid) {
    const Matrix x_t = corrupt_rows(config.schedule, t, x0, eps);
    std::vector<NtkPoint> points(n);
    for (int i = 0; i < n; ++i) points[i] = {x_t.row(i).transpose(), t};
    const NtkGram gram = ntk_gram(model, points);
    const Vector spectrum = ntk_spectrum(gram, n * d);
    const Scalar erank = effective_rank(spectrum);
    csv.cell(to_string(config.target)).cell(to_string(config.schedule.kind)).cell(t);
    for (int j = 0; j < 3; ++j) {
      if (j < spectrum.size())
        csv.cell(spectrum(j));
      else
        csv.cell("");
    }
    csv.cell(erank);
    csv.end_row();
    k1.emplace_back(t, spectrum(0));
    if (spectrum.size() > 1) k2.emplace_back(t, spectrum(1));
    if (spectrum.size() > 2) k3.emplace_back(t, spectrum(2));
    er.emplace_back(t, erank);
  }
  csv.close();
  recorder.record("ntk_spectrum.csv");

  std::vector<NtkPoint> joint;
  joint.reserve(config.heatmap_times.size() * static_cast<std::size_t>(n));
  for (const Scalar t : config.heatmap_times) {
    const Matrix x_t = corrupt_rows(config.schedule, t, x0, eps);
    for (int i = 0; i < n; ++i) joint.push_back({x_t.row(i).transpose(), t});
  }
  const NtkGram joint_gram = ntk_gram(model, joint);
  const Matrix heat = normalized_heatmap(joint_gram);
  for (std::size_t k = 0; k < config.heatmap_times.size(); ++k) {
    const std::string name = "heatmap_" + heatmap_label(config.heatmap_times[k]) + ".csv";
    write_matrix_csv(recorder.path(name),
                     heat.block(static_cast<Eigen::Index>(k) * n,
                                static_cast<Eigen::Index>(k) * n, n, n));
    recorder.record(name);
  }
  write_matrix_csv(recorder.path("heatmap_joint.csv"), heat);
  recorder.record("heatmap_joint.csv");

  if (config.plot) {
    svg_chart(recorder.path("ntk_spectrum.svg"),
              {"ntk spectrum vs t", "t", "eigenvalue / rank", false, true},
              {{"kappa1", k1, kPalette[0], true},
               {"kappa2", k2, kPalette[1], true},
               {"kappa3", k3, kPalette[2], true},
               {"effective rank", er, kPalette[3], true}});
    recorder.record("ntk_spectrum.svg");
    svg_heatmap(recorder.path("heatmap.svg"), "joint ntk heatmap", heat);
    recorder.record("heatmap.svg");
  }
}

void cmd_pca(const ExperimentConfig& config, RunRecorder& recorder) {
  ensure_out_dir(config);
  const GmmModel gmm = GmmModel::four_clusters();
  const MlpModel model = load_global_model(recorder);

  Rng rng = Rng::stream(config.seed, kStreamPca);
  std::vector<int> labels;
  const Matrix x0 = sample_x0(gmm, config.pca_samples, rng, &labels);
  const Matrix eps = draw_normals(config.pca_samples, gmm.dim(), rng);

  const auto hidden_at = [&](Scalar t) {
    const Matrix x_t = corrupt_rows(config.schedule, t, x0, eps);
    const Vector tv = Vector::Constant(x_t.rows(), t);
    return forward_batch(model, x_t, tv).hidden;
  };

  constexpr Scalar kFitTime = 0.1;
  const PcaBasis basis = pca_fit(hidden_at(kFitTime), 2);
  const Matrix gram = basis.components.transpose() * basis.components;
  const Scalar ortho_err =
      (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  recorder.note("pca_fit_t", csv_num(kFitTime));
  recorder.note("pca_orthonormality_error", csv_num(ortho_err));
  std::string variances;
  for (Eigen::Index i = 0; i < basis.explained_variance.size(); ++i) {
    if (i) variances += ",";
    variances += csv_num(basis.explained_variance(i));
  }
  recorder.note("pca_explained_variance", variances);

  CsvFile csv(recorder.path("pca.csv"), {"t", "sample_id", "cluster_id", "pc1", "pc2"});
  std::array<SvgSeries, 4> cluster_series;
  for (const Scalar t : config.pca_times) {
    const Matrix proj = pca_project(basis, hidden_at(t));
    for (Eigen::Index i = 0; i < proj.rows(); ++i) {
      csv.cell(t).cell(static_cast<long>(i)).cell(labels[static_cast<std::size_t>(i)])
          .cell(proj(i, 0)).cell(proj(i, 1));
      csv.end_row();
      if (config.plot) {
        auto& s = cluster_series[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
        s.points.emplace_back(proj(i, 0), proj(i, 1));
      }
    }
  }
  csv.close();
  recorder.record("pca.csv");

  if (config.plot) {
    std::vector<SvgSeries> series;
    for (int k = 0; k < 4; ++k) {
      cluster_series[static_cast<std::size_t>(k)].label = "cluster " + std::to_string(k);
      cluster_series[static_cast<std::size_t>(k)].color = kPalette[k];
      cluster_series[static_cast<std::size_t>(k)].line = false;
      series.push_back(cluster_series[static_cast<std::size_t>(k)]);
    }
    svg_chart(recorder.path("pca.svg"),
              {"hidden-feature pca across t", "pc1", "pc2", false, false}, series);
    recorder.record("pca.svg");
  }
}

void cmd_compare(const ExperimentConfig& config, RunRecorder& recorder) {
  ensure_out_dir(config);
  const GmmModel gmm = GmmModel::four_clusters();
  const std::vector<Scalar> grid = linspace(0.0, 1.0, config.t_grid_size);
  const std::vector<McEstimate> floors =
      floor_curve(gmm, config.target, config.schedule, grid, config.n_mc, config.seed);

  CsvFile csv(recorder.path("compare.csv"),
              {"weight", "scope", "t", "empirical_mse", "bayes_floor", "excess"});
  std::vector<SvgSeries> series;
  for (const WeightKind rule : kAllWeights) {
    TrainConfig tc = to_train_config(config);
    tc.weight = rule;
    const auto [model, log] = train(tc, gmm);
    Rng eval_rng =
        Rng::stream(config.seed, kStreamEvalCompare + static_cast<std::uint64_t>(weight_index(rule)));
    const std::vector<McEstimate> mse = evaluate_loss_curve(
        model, gmm, config.target, config.schedule, grid, config.eval_mc, eval_rng);

    Scalar mse_sum = 0, floor_sum = 0;
    SvgSeries s{to_string(rule), {}, kPalette[weight_index(rule)], true};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Scalar excess = mse[i].mean - floors[i].mean;
      csv.cell(to_string(rule)).cell("grid").cell(grid[i]).cell(mse[i].mean)
          .cell(floors[i].mean).cell(excess);
      csv.end_row();
      mse_sum += mse[i].mean;
      floor_sum += floors[i].mean;
      s.points.emplace_back(grid[i], excess);
    }
    const auto count = static_cast<Scalar>(grid.size());
    csv.cell(to_string(rule)).cell("aggregate").cell("").cell(mse_sum / count)
        .cell(floor_sum / count).cell(mse_sum / count - floor_sum / count);
    csv.end_row();
    series.push_back(std::move(s));
  }
  csv.close();
  recorder.record("compare.csv");

  if (config.plot) {
    svg_chart(recorder.path("compare.svg"),
              {std::string("excess by weight rule, target ") + to_string(config.target), "t",
               "excess mse", false, false},
              series);
    recorder.record("compare.svg");
  }
}

void cmd_all(const ExperimentConfig& config, RunRecorder& recorder) {
  timed_step(recorder, "train", [&] { cmd_train(config, recorder); });
  timed_step(recorder, "bayes", [&] { cmd_bayes(config, recorder); });
  timed_step(recorder, "phase", [&] { cmd_phase(config, recorder); });
  timed_step(recorder, "ntk", [&] { cmd_ntk(config, recorder); });
  timed_step(recorder, "pca", [&] { cmd_pca(config, recorder); });
  timed_step(recorder, "compare", [&] { cmd_compare(config, recorder); });
}

}  // namespace erdlab
