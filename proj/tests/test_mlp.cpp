#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include <erdlab/mlp.hpp>

using namespace erdlab;

namespace {

// Independent scalar-loop reimplementation of the forward pass and of the
// single-sample gradient, sharing nothing with the library's Eigen
// expressions beyond the parameter layout accessors.
struct LoopTrace {
  std::vector<Vector> pre;
  std::vector<Vector> act;
  Vector z0;
  Vector out;
};

Scalar silu(Scalar a) { return a / (1.0 + std::exp(-a)); }
Scalar dsilu(Scalar a) {
  const Scalar s = 1.0 / (1.0 + std::exp(-a));
  return s * (1.0 + a * (1.0 - s));
}

LoopTrace loop_forward(const MlpModel& m, const Vector& x, Scalar t) {
  const MlpConfig& c = m.config;
  LoopTrace tr;
  tr.z0.resize(c.in_dim());
  tr.z0.head(c.data_dim) = x;
  tr.z0.tail(c.embed_dim) = time_embed(t, c.embed_dim);
  tr.pre.resize(c.depth);
  tr.act.resize(c.depth);
  const Vector* in = &tr.z0;
  for (int l = 0; l < c.depth; ++l) {
    const auto w = m.weight(l);
    const auto b = m.bias(l);
    tr.pre[l].resize(w.rows());
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      Scalar acc = b(r);
      for (Eigen::Index j = 0; j < w.cols(); ++j) acc += w(r, j) * (*in)(j);
      tr.pre[l](r) = acc;
    }
    tr.act[l] = tr.pre[l].unaryExpr([](Scalar a) { return silu(a); });
    in = &tr.act[l];
  }
  const auto w = m.weight(c.depth);
  const auto b = m.bias(c.depth);
  tr.out.resize(w.rows());
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    Scalar acc = b(r);
    for (Eigen::Index j = 0; j < w.cols(); ++j) acc += w(r, j) * (*in)(j);
    tr.out(r) = acc;
  }
  return tr;
}

// Gradient of (w/2)||f(x,t) - y||^2 for one sample, by hand.
Vector loop_grad(const MlpModel& m, const Vector& x, Scalar t, const Vector& y, Scalar w_i) {
  const MlpConfig& c = m.config;
  const LoopTrace tr = loop_forward(m, x, t);
  Vector grad = Vector::Zero(m.params.size());
  Vector g = w_i * (tr.out - y);

  long offset = 0;
  std::vector<long> w_off(c.depth + 1), b_off(c.depth + 1);
  for (int l = 0; l <= c.depth; ++l) {
    const long rows = (l == c.depth) ? c.data_dim : c.hidden_dim;
    const long cols = (l == 0) ? c.in_dim() : c.hidden_dim;
    w_off[l] = offset;
    b_off[l] = offset + rows * cols;
    offset = b_off[l] + rows;
  }

  const Vector& last = tr.act[c.depth - 1];
  {
    const auto w = m.weight(c.depth);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        grad(w_off[c.depth] + j * w.rows() + r) = g(r) * last(j);
      grad(b_off[c.depth] + r) = g(r);
    }
    g = (w.transpose() * g).eval();
  }
  for (int l = c.depth - 1; l >= 0; --l) {
    Vector d(tr.pre[l].size());
    for (Eigen::Index r = 0; r < d.size(); ++r) d(r) = g(r) * dsilu(tr.pre[l](r));
    const Vector& in = (l == 0) ? tr.z0 : tr.act[l - 1];
    const auto w = m.weight(l);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        grad(w_off[l] + j * w.rows() + r) = d(r) * in(j);
      grad(b_off[l] + r) = d(r);
    }
    if (l > 0) g = (w.transpose() * d).eval();
  }
  return grad;
}

MlpConfig small_config() {
  MlpConfig c;
  c.data_dim = 2;
  c.embed_dim = 8;
  c.hidden_dim = 24;
  c.depth = 3;
  return c;
}

}  // namespace

TEST_CASE("parameter count matches shape arithmetic") {
  MlpConfig c;
  CHECK(c.param_count() == 66 * 256 + 256 + 2 * (256 * 256 + 256) + 256 * 2 + 2);
  CHECK(c.param_count() == 149250);
  CHECK(small_config().param_count() ==
        10 * 24 + 24 + 2 * (24 * 24 + 24) + 24 * 2 + 2);
}

TEST_CASE("init is deterministic and kaiming-scaled") {
  const MlpConfig c;
  const MlpModel a = init(c, 99);
  const MlpModel b = init(c, 99);
  CHECK(a.params == b.params);
  CHECK(a.seed == 99);
  const MlpModel other = init(c, 100);
  CHECK(a.params != other.params);

  const auto w1 = a.weight(0);
  const Scalar var = (w1.array() - w1.mean()).square().mean();
  CHECK(var == doctest::Approx(2.0 / 66.0).epsilon(0.10));
  for (int l = 0; l <= c.depth; ++l) CHECK(a.bias(l).norm() == 0.0);
}

TEST_CASE("time embedding basics") {
  const Vector e0 = time_embed(0.0);
  CHECK(e0.size() == 64);
  for (int i = 0; i < 32; ++i) {
    CHECK(e0(2 * i) == 0.0);
    CHECK(e0(2 * i + 1) == 1.0);
  }
  for (const Scalar t : {0.12, 0.5, 0.99})
    CHECK(time_embed(t).squaredNorm() == doctest::Approx(32.0).epsilon(1e-12));

  // Injective on a 1000-point grid.
  std::vector<Vector> embeds;
  for (int i = 0; i < 1000; ++i) embeds.push_back(time_embed(i / 999.0));
  Scalar min_dist = 1e300;
  for (int i = 0; i < 1000; ++i)
    for (int j = i + 1; j < 1000; ++j)
      min_dist = std::min(min_dist, (embeds[i] - embeds[j]).norm());
  CHECK(min_dist > 0.0);

  CHECK_THROWS_AS(time_embed(0.5, 7), std::invalid_argument);
}

TEST_CASE("forward basics") {
  MlpModel zero = init(small_config(), 1);
  zero.params.setZero();
  Vector x(2);
  x << 1.7, -0.3;
  CHECK(forward(zero, x, 0.4).first.norm() == 0.0);

  const MlpModel m = init(small_config(), 2);
  const auto [f1, h1] = forward(m, x, 0.4);
  const auto [f2, h2] = forward(m, x, 0.4);
  CHECK(f1 == f2);
  CHECK(h1 == h2);
  CHECK(h1.size() == 24);

  MlpModel doubled = m;
  doubled.weight(doubled.config.depth) *= 2.0;
  doubled.bias(doubled.config.depth) *= 2.0;
  const auto [fd, hd] = forward(doubled, x, 0.4);
  CHECK(fd == (2.0 * f1).eval());
  CHECK(hd == h1);

  Vector bad(2);
  bad << std::nan(""), 0.0;
  CHECK_THROWS_AS(forward(m, bad, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(forward(m, x, std::nan("")), std::invalid_argument);
}

TEST_CASE("single and batched forward agree") {
  const MlpModel m = init(small_config(), 5);
  Rng rng(8);
  const int n = 17;
  Matrix x(n, 2);
  Vector t(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    x(i, 1) = rng.normal();
    t(i) = rng.uniform();
  }
  const BatchOutput out = forward_batch(m, x, t);
  for (int i = 0; i < n; ++i) {
    const auto [f, h] = forward(m, x.row(i).transpose(), t(i));
    CHECK((out.output.row(i).transpose() - f).norm() <= 1e-12);
    CHECK((out.hidden.row(i).transpose() - h).norm() <= 1e-12);
  }
}

TEST_CASE("loss_grad zero at a perfect fit and linear in the weights") {
  const MlpModel m = init(small_config(), 6);
  Rng rng(9);
  const int n = 5;
  Batch batch;
  batch.x.resize(n, 2);
  batch.t.resize(n);
  batch.w = Vector::Ones(n);
  for (int i = 0; i < n; ++i) {
    batch.x(i, 0) = rng.normal();
    batch.x(i, 1) = rng.normal();
    batch.t(i) = rng.uniform();
  }
  batch.y = forward_batch(m, batch.x, batch.t).output;
  const auto [loss0, grad0] = loss_grad(m, batch);
  CHECK(loss0 == 0.0);
  CHECK(grad0.norm() == 0.0);

  batch.y.array() += 0.5;
  const auto [loss1, grad1] = loss_grad(m, batch);
  batch.w *= 3.0;
  const auto [loss3, grad3] = loss_grad(m, batch);
  CHECK(loss3 == doctest::Approx(3.0 * loss1).epsilon(1e-14));
  CHECK((grad3 - 3.0 * grad1).norm() <= 1e-14 * grad3.norm());
}

TEST_CASE("loss_grad matches the loop oracle and finite differences") {
  for (const std::uint64_t seed : {21u, 22u, 23u}) {
    MlpModel m = init(small_config(), seed);
    Rng rng(seed + 1000);
    Vector x(2), y(2);
    x << rng.normal(), rng.normal();
    y << rng.normal(), rng.normal();
    const Scalar t = rng.uniform();
    const Scalar w_i = 1.7;

    Batch batch;
    batch.x = x.transpose();
    batch.t = Vector::Constant(1, t);
    batch.y = y.transpose();
    batch.w = Vector::Constant(1, w_i);

    const auto [loss, grad] = loss_grad(m, batch);
    const Vector oracle = loop_grad(m, x, t, y, w_i);
    CHECK((grad - oracle).norm() <= 1e-10 * (1.0 + oracle.norm()));

    // Central finite differences on random coordinates.
    int checked = 0;
    Scalar worst = 0.0;
    while (checked < 50) {
      const long i = static_cast<long>(rng.uniform_int(static_cast<int>(m.params.size())));
      const Scalar h = 1e-5;
      const Scalar saved = m.params(i);
      m.params(i) = saved + h;
      const Scalar up = loss_grad(m, batch).first;
      m.params(i) = saved - h;
      const Scalar down = loss_grad(m, batch).first;
      m.params(i) = saved;
      const Scalar fd = (up - down) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - grad(i)) / std::max(1e-6, std::abs(grad(i))));
      ++checked;
    }
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("param_jacobian matches finite differences and directional derivatives") {
  MlpModel m = init(small_config(), 40);
  Rng rng(41);
  Vector x(2);
  x << 0.8, -1.4;
  const Scalar t = 0.37;
  const Matrix jac = param_jacobian(m, x, t);
  CHECK(jac.rows() == 2);
  CHECK(jac.cols() == m.params.size());

  Scalar worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const long i = static_cast<long>(rng.uniform_int(static_cast<int>(m.params.size())));
    const Scalar h = 1e-5;
    const Scalar saved = m.params(i);
    m.params(i) = saved + h;
    const Vector up = forward(m, x, t).first;
    m.params(i) = saved - h;
    const Vector down = forward(m, x, t).first;
    m.params(i) = saved;
    for (int r = 0; r < 2; ++r) {
      const Scalar fd = (up(r) - down(r)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - jac(r, i)) / std::max(1e-6, std::abs(jac(r, i))));
    }
  }
  CHECK(worst <= 1e-4);

  // J g against a forward difference along g.
  Vector dir(m.params.size());
  for (long i = 0; i < dir.size(); ++i) dir(i) = rng.normal();
  dir /= dir.norm();
  const Vector analytic = jac * dir;
  const Scalar h = 1e-6;
  MlpModel shifted = m;
  shifted.params += h * dir;
  MlpModel shifted_down = m;
  shifted_down.params -= h * dir;
  const Vector fd =
      (forward(shifted, x, t).first - forward(shifted_down, x, t).first) / (2.0 * h);
  CHECK((fd - analytic).norm() <= 1e-4 * (1.0 + analytic.norm()));
}

TEST_CASE("gradient factors through the jacobian for a single sample") {
  const MlpModel m = init(small_config(), 50);
  Vector x(2), y(2);
  x << 0.4, 1.1;
  y << -0.2, 0.6;
  const Scalar t = 0.61;
  const Scalar w_i = 2.3;

  Batch batch;
  batch.x = x.transpose();
  batch.t = Vector::Constant(1, t);
  batch.y = y.transpose();
  batch.w = Vector::Constant(1, w_i);
  const auto [loss, grad] = loss_grad(m, batch);

  const auto [f, hidden] = forward(m, x, t);
  const Matrix jac = param_jacobian(m, x, t);
  const Vector expected = jac.transpose() * (w_i * (f - y));
  CHECK((grad - expected).norm() <= 1e-10 * (1.0 + expected.norm()));

  // Readout block of the gradient has the closed form w (f - y) h^T.
  const MlpConfig& c = m.config;
  const long readout_w = static_cast<long>(c.data_dim) * c.hidden_dim;
  const long tail = readout_w + c.data_dim;
  const Vector readout = grad.tail(tail);
  const Vector r = w_i * (f - y);
  for (int j = 0; j < c.hidden_dim; ++j)
    for (int row = 0; row < c.data_dim; ++row)
      CHECK(readout(static_cast<long>(j) * c.data_dim + row) ==
            doctest::Approx(r(row) * hidden(j)).epsilon(1e-12));
  CHECK((readout.tail(c.data_dim) - r).norm() <= 1e-12);
}

TEST_CASE("checkpoint round trip and error paths") {
  const MlpModel m = init(small_config(), 77);
  const std::string path = "checkpoint_test.bin";
  save_checkpoint(m, path);
  const MlpModel back = load_checkpoint(path);
  CHECK(back.params == m.params);
  CHECK(back.seed == 77);
  CHECK(back.config.hidden_dim == m.config.hidden_dim);
  CHECK(back.config.embed_dim == m.config.embed_dim);

  CHECK_THROWS_AS(load_checkpoint("does_not_exist.bin"), std::runtime_error);

  // Truncated file.
  {
    std::FILE* f = std::fopen(path.c_str(), "rb+");
    REQUIRE(f != nullptr);
    std::fclose(f);
    std::FILE* t = std::fopen("checkpoint_trunc.bin", "wb");
    REQUIRE(t != nullptr);
    std::fwrite("ERDLCKPT", 1, 8, t);
    std::fclose(t);
  }
  CHECK_THROWS_AS(load_checkpoint("checkpoint_trunc.bin"), std::runtime_error);

  std::remove(path.c_str());
  std::remove("checkpoint_trunc.bin");
}
