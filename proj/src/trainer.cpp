#include <erdlab/trainer.hpp>

#include <algorithm>
#include <cmath>

#include <erdlab/parallel.hpp>

namespace erdlab {

namespace {

void check_config(const TrainConfig& c) {
  if (!(c.t_lo >= 0.0 && c.t_lo < c.t_hi && c.t_hi <= 1.0))
    throw std::invalid_argument("TrainConfig: need 0 <= t_lo < t_hi <= 1");
  if (!(c.lr > 0.0)) throw std::invalid_argument("TrainConfig: lr must be positive");
  if (c.batch < 1) throw std::invalid_argument("TrainConfig: batch must be >= 1");
  if (c.iterations < 0) throw std::invalid_argument("TrainConfig: iterations must be >= 0");
}

struct AdamState {
  Vector m;
  Vector v;
  explicit AdamState(long p) : m(Vector::Zero(p)), v(Vector::Zero(p)) {}

  void step(Vector& params, const Vector& grad, const TrainConfig& c, int iteration) {
    m = c.adam_beta1 * m + (1.0 - c.adam_beta1) * grad;
    v.array() = c.adam_beta2 * v.array() + (1.0 - c.adam_beta2) * grad.array().square();
    const Scalar bc1 = 1.0 - std::pow(c.adam_beta1, iteration + 1);
    const Scalar bc2 = 1.0 - std::pow(c.adam_beta2, iteration + 1);
    params.array() -= c.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + c.adam_eps);
  }
};

}  // namespace

std::pair<MlpModel, MetricLog> train(const TrainConfig& config, const GmmModel& gmm) {
  check_config(config);
  if (config.net.data_dim != gmm.dim())
    throw std::invalid_argument("train: network data_dim does not match mixture dimension");
  const WeightRule rule = WeightRule::make(config.weight, config.target, config.schedule,
                                           config.gamma);
  MlpModel model = init(config.net, config.seed);
  Rng data_rng = Rng::stream(config.seed, 1);
  AdamState adam(model.params.size());
  MetricLog log;
  log.loss.reserve(config.iterations);

  const int n = config.batch;
  const int d = gmm.dim();
  Batch batch;
  batch.t.resize(n);
  batch.y.resize(n, d);
  batch.w.resize(n);
  Matrix eps(n, d);
  Matrix x_t(n, d);

  for (int iter = 0; iter < config.iterations; ++iter) {
    const Matrix x0 = sample_x0(gmm, n, data_rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) eps(i, j) = data_rng.normal();
    for (int i = 0; i < n; ++i) batch.t(i) = data_rng.uniform(config.t_lo, config.t_hi);

    for (int i = 0; i < n; ++i) {
      const Scalar t = batch.t(i);
      const auto [alpha, sigma] = alpha_sigma(config.schedule, t);
      const auto [cx, ceps] = target_coeffs(config.target, config.schedule, t);
      x_t.row(i) = alpha * x0.row(i) + sigma * eps.row(i);
      batch.y.row(i) = cx * x0.row(i) + ceps * eps.row(i);
      batch.w(i) = rule(t);
    }
    batch.x = x_t;

    auto [loss, grad] = loss_grad(model, batch);
    if (!std::isfinite(loss)) throw TrainingFault(iter, "non-finite loss");
    adam.step(model.params, grad, config, iter);
    if (!model.params.allFinite()) throw TrainingFault(iter, "non-finite parameters");
    log.loss.push_back(loss);
  }
  return {std::move(model), std::move(log)};
}

std::vector<std::pair<Scalar, Scalar>> equal_bins(int count) {
  if (count < 1) throw std::invalid_argument("equal_bins: count must be >= 1");
  std::vector<std::pair<Scalar, Scalar>> bins(count);
  for (int i = 0; i < count; ++i)
    bins[i] = {static_cast<Scalar>(i) / count, static_cast<Scalar>(i + 1) / count};
  bins.back().second = 1.0;
  return bins;
}

std::vector<BinResult> train_piecewise(const TrainConfig& config,
                                       const std::vector<std::pair<Scalar, Scalar>>& bins,
                                       const GmmModel& gmm) {
  if (bins.empty()) throw std::invalid_argument("train_piecewise: empty bin list");
  constexpr Scalar kTol = 1e-12;
  if (std::abs(bins.front().first) > kTol || std::abs(bins.back().second - 1.0) > kTol)
    throw std::invalid_argument("train_piecewise: bins must start at 0 and end at 1");
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (!(bins[i].first < bins[i].second))
      throw std::invalid_argument("train_piecewise: each bin needs lo < hi");
    if (i > 0 && std::abs(bins[i].first - bins[i - 1].second) > kTol)
      throw std::invalid_argument("train_piecewise: bins must tile [0,1] without gaps");
  }

  std::vector<BinResult> results(bins.size());
  const int shards = std::min<int>(shard_count(), static_cast<int>(bins.size()));
  for_each_shard(static_cast<long>(bins.size()), shards, [&](int, long begin, long count) {
    for (long i = begin; i < begin + count; ++i) {
      TrainConfig bin_config = config;
      bin_config.t_lo = bins[i].first;
      bin_config.t_hi = bins[i].second;
      bin_config.seed = config.seed + static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL;
      auto [model, log] = train(bin_config, gmm);
      results[i] = BinResult{bins[i].first, bins[i].second, std::move(model), std::move(log)};
    }
  });
  return results;
}

std::vector<McEstimate> evaluate_loss_curve(const Predictor& predictor, const GmmModel& gmm,
                                            TargetKind target, const Schedule& schedule,
                                            const std::vector<Scalar>& t_grid, long n_mc,
                                            Rng& rng) {
  if (n_mc < 1) throw std::invalid_argument("evaluate_loss_curve: n_mc must be >= 1");
  const int d = gmm.dim();
  std::vector<McEstimate> curve(t_grid.size());
  for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
    const Scalar t = t_grid[gi];
    const auto [alpha, sigma] = alpha_sigma(schedule, t);
    const auto [cx, ceps] = target_coeffs(target, schedule, t);
    const std::uint64_t base = rng.next_u64();
    const int shards = shard_count();
    std::vector<Scalar> sum(shards, 0.0), sum_sq(shards, 0.0);
    for_each_shard(n_mc, shards, [&](int shard, long, long count) {
      Rng local = Rng::stream(base, static_cast<std::uint64_t>(shard));
      constexpr long kChunk = 4096;
      Scalar acc = 0.0, acc_sq = 0.0;
      for (long done = 0; done < count; done += kChunk) {
        const long m = std::min(kChunk, count - done);
        const Matrix x0 = sample_x0(gmm, m, local);
        Matrix eps(m, d);
        for (long i = 0; i < m; ++i)
          for (int j = 0; j < d; ++j) eps(i, j) = local.normal();
        const Matrix x_t = alpha * x0 + sigma * eps;
        const Matrix y = cx * x0 + ceps * eps;
        const Matrix f = predictor(x_t, t);
        if (f.rows() != m || f.cols() != d)
          throw std::invalid_argument("evaluate_loss_curve: predictor output shape mismatch");
        for (long i = 0; i < m; ++i) {
          const Scalar se = (f.row(i) - y.row(i)).squaredNorm();
          acc += se;
          acc_sq += se * se;
        }
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
    curve[gi] = McEstimate{mean, std::sqrt(var / n)};
  }
  return curve;
}

std::vector<McEstimate> evaluate_loss_curve(const MlpModel& model, const GmmModel& gmm,
                                            TargetKind target, const Schedule& schedule,
                                            const std::vector<Scalar>& t_grid, long n_mc,
                                            Rng& rng) {
  const Predictor net = [&model](const Matrix& x_t, Scalar t) {
    return forward_batch(model, x_t, Vector::Constant(x_t.rows(), t)).output;
  };
  return evaluate_loss_curve(net, gmm, target, schedule, t_grid, n_mc, rng);
}

}  // namespace erdlab
