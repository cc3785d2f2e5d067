#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include <erdlab/trainer.hpp>

using namespace erdlab;

namespace {

TrainConfig quick_config() {
  TrainConfig c;
  c.net.embed_dim = 16;
  c.net.hidden_dim = 32;
  c.net.depth = 2;
  c.iterations = 40;
  c.batch = 32;
  c.seed = 7;
  return c;
}

}  // namespace

TEST_CASE("zero iterations returns the freshly initialized model") {
  TrainConfig c = quick_config();
  c.iterations = 0;
  const auto [model, log] = train(c, GmmModel::four_clusters());
  CHECK(model.params == init(c.net, c.seed).params);
  CHECK(log.loss.empty());
}

TEST_CASE("training is deterministic in the seed") {
  const TrainConfig c = quick_config();
  const GmmModel gmm = GmmModel::four_clusters();
  const auto [m1, log1] = train(c, gmm);
  const auto [m2, log2] = train(c, gmm);
  CHECK(m1.params == m2.params);
  CHECK(log1.loss == log2.loss);
  CHECK(static_cast<int>(log1.loss.size()) == c.iterations);

  TrainConfig c2 = c;
  c2.seed = 8;
  const auto [m3, log3] = train(c2, gmm);
  CHECK(m1.params != m3.params);
}

TEST_CASE("config validation") {
  const GmmModel gmm = GmmModel::four_clusters();
  TrainConfig c = quick_config();
  c.t_lo = 0.6;
  c.t_hi = 0.4;
  CHECK_THROWS_AS(train(c, gmm), std::invalid_argument);
  c = quick_config();
  c.lr = 0.0;
  CHECK_THROWS_AS(train(c, gmm), std::invalid_argument);
  c = quick_config();
  c.batch = 0;
  CHECK_THROWS_AS(train(c, gmm), std::invalid_argument);
  c = quick_config();
  c.net.data_dim = 3;
  CHECK_THROWS_AS(train(c, gmm), std::invalid_argument);
}

TEST_CASE("a short run reduces the loss") {
  TrainConfig c = quick_config();
  c.net.hidden_dim = 64;
  c.iterations = 300;
  c.batch = 64;
  c.target = TargetKind::X0;
  const auto [model, log] = train(c, GmmModel::four_clusters());
  const Scalar head =
      std::accumulate(log.loss.begin(), log.loss.begin() + 50, 0.0) / 50.0;
  const Scalar tail = std::accumulate(log.loss.end() - 50, log.loss.end(), 0.0) / 50.0;
  CHECK(tail < head);
}

TEST_CASE("divergent training raises a fault with the iteration index") {
  TrainConfig c = quick_config();
  c.lr = 1e160;
  c.iterations = 10;
  try {
    train(c, GmmModel::four_clusters());
    FAIL("expected TrainingFault");
  } catch (const TrainingFault& fault) {
    CHECK(fault.iteration() >= 0);
    CHECK(fault.iteration() < 10);
    CHECK(std::string(fault.what()).find("iteration") != std::string::npos);
  }
}

TEST_CASE("equal_bins tiles the unit interval") {
  const auto bins = equal_bins(5);
  CHECK(bins.size() == 5);
  CHECK(bins.front().first == 0.0);
  CHECK(bins.back().second == 1.0);
  for (std::size_t i = 1; i < bins.size(); ++i) CHECK(bins[i].first == bins[i - 1].second);
  CHECK_THROWS_AS(equal_bins(0), std::invalid_argument);
}

TEST_CASE("piecewise with one full bin reproduces global training") {
  const TrainConfig c = quick_config();
  const GmmModel gmm = GmmModel::four_clusters();
  const auto [global_model, global_log] = train(c, gmm);
  const auto bins = train_piecewise(c, {{0.0, 1.0}}, gmm);
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].model.params == global_model.params);
  CHECK(bins[0].log.loss == global_log.loss);
}

TEST_CASE("five-bin piecewise trains five distinct models") {
  TrainConfig c = quick_config();
  c.iterations = 10;
  const auto results = train_piecewise(c, equal_bins(5), GmmModel::four_clusters());
  CHECK(results.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(results[i].t_lo == doctest::Approx(i / 5.0));
    CHECK(static_cast<int>(results[i].log.loss.size()) == c.iterations);
  }
  CHECK(results[0].model.params != results[1].model.params);
}

TEST_CASE("bad bin lists are rejected") {
  const TrainConfig c = quick_config();
  const GmmModel gmm = GmmModel::four_clusters();
  CHECK_THROWS_AS(train_piecewise(c, {}, gmm), std::invalid_argument);
  CHECK_THROWS_AS(train_piecewise(c, {{0.0, 0.4}, {0.5, 1.0}}, gmm), std::invalid_argument);
  CHECK_THROWS_AS(train_piecewise(c, {{0.1, 1.0}}, gmm), std::invalid_argument);
  CHECK_THROWS_AS(train_piecewise(c, {{0.0, 0.5}, {0.5, 0.9}}, gmm), std::invalid_argument);
}

TEST_CASE("loss curve of an untrained model dominates the bayes floor") {
  const GmmModel gmm = GmmModel::four_clusters();
  const MlpModel model = init(quick_config().net, 91);
  std::vector<Scalar> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.05 + 0.9 * i / 10.0);
  Rng rng(92);
  const auto curve =
      evaluate_loss_curve(model, gmm, TargetKind::X0, Schedule::linear(), grid, 4000, rng);
  REQUIRE(curve.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Rng floor_rng(93 + i);
    const McEstimate floor =
        bayes_floor(gmm, TargetKind::X0, Schedule::linear(), grid[i], 20000, floor_rng);
    const Scalar slack = 4.0 * (curve[i].std_error + floor.std_error);
    CHECK(curve[i].mean >= floor.mean - slack);
  }
}

TEST_CASE("the bayes predictor itself evaluates at zero excess") {
  const GmmModel gmm = GmmModel::four_clusters();
  const Schedule lin = Schedule::linear();
  const TargetKind target = TargetKind::X0;
  const Predictor oracle = [&](const Matrix& x_t, Scalar t) {
    Matrix out(x_t.rows(), x_t.cols());
    for (Eigen::Index i = 0; i < x_t.rows(); ++i)
      out.row(i) = bayes_predictor(gmm, target, lin, t, x_t.row(i).transpose()).transpose();
    return out;
  };
  const std::vector<Scalar> grid{0.1, 0.35, 0.6, 0.85};
  Rng rng(71);
  const auto curve = evaluate_loss_curve(oracle, gmm, target, lin, grid, 20000, rng);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Rng floor_rng(72 + i);
    const McEstimate floor = bayes_floor(gmm, target, lin, grid[i], 20000, floor_rng);
    CHECK(std::abs(curve[i].mean - floor.mean) <=
          4.0 * (curve[i].std_error + floor.std_error));
  }
}

TEST_CASE("eps floor curve falls from 2 to 0 across t") {
  // The exact identity floor_eps = ((1-t)/t)^2 floor_x0 makes the curve dip
  // and bump in the cluster-ambiguity region, so monotonicity is only
  // checked on the flanks.
  const GmmModel gmm = GmmModel::four_clusters();
  Rng rng(95);
  auto floor_at = [&](Scalar t) {
    return bayes_floor(gmm, TargetKind::Eps, Schedule::linear(), t, 40000, rng).mean;
  };
  std::vector<Scalar> early, late;
  for (const Scalar t : {0.001, 0.05, 0.15, 0.25}) early.push_back(floor_at(t));
  for (const Scalar t : {0.7, 0.9, 0.999}) late.push_back(floor_at(t));
  for (std::size_t i = 1; i < early.size(); ++i) CHECK(early[i] < early[i - 1]);
  for (std::size_t i = 1; i < late.size(); ++i) CHECK(late[i] < late[i - 1]);
  CHECK(early.front() == doctest::Approx(2.0).epsilon(0.05));
  CHECK(late.back() <= 0.02);
}
