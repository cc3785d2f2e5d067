#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <erdlab/schedule.hpp>

using namespace erdlab;

namespace {

const Schedule kAll[] = {Schedule::linear(), Schedule::vp(), Schedule::gvp()};

Scalar grid_t(int i, int n = 1025) { return static_cast<Scalar>(i) / (n - 1); }

// Trapezoid integral of beta(u) = beta_min + (beta_max - beta_min) u over
// [0, t]; exact for a linear integrand, so it independently pins B(t).
Scalar vp_integral_oracle(const Schedule& s, Scalar t, int n = 1001) {
  Scalar acc = 0.0;
  const Scalar h = t / (n - 1);
  for (int i = 0; i < n; ++i) {
    const Scalar u = t * grid_t(i, n);
    const Scalar beta = s.beta_min + (s.beta_max - s.beta_min) * u;
    acc += (i == 0 || i == n - 1) ? 0.5 * beta : beta;
  }
  return acc * h;
}

}  // namespace

TEST_CASE("alpha_sigma pinned values") {
  auto [al, sl] = alpha_sigma(Schedule::linear(), 0.5);
  CHECK(al == 0.5);
  CHECK(sl == 0.5);

  auto [ag, sg] = alpha_sigma(Schedule::gvp(), 0.0);
  CHECK(ag == 1.0);
  CHECK(sg == 0.0);

  auto [av, sv] = alpha_sigma(Schedule::vp(), 1.0);
  CHECK(av == doctest::Approx(std::exp(-5.025)).epsilon(1e-12));
  CHECK(sv == doctest::Approx(std::sqrt(1.0 - av * av)).epsilon(1e-12));
}

TEST_CASE("vp alpha matches the quadrature oracle across t") {
  const Schedule vp = Schedule::vp();
  for (int i = 0; i <= 20; ++i) {
    const Scalar t = grid_t(i, 21);
    const auto [alpha, sigma] = alpha_sigma(vp, t);
    CHECK(alpha == doctest::Approx(std::exp(-0.5 * vp_integral_oracle(vp, t))).epsilon(1e-10));
    CHECK(sigma * sigma + alpha * alpha == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("t outside [0,1] is a domain error") {
  for (const Schedule& s : kAll) {
    CHECK_THROWS_AS(alpha_sigma(s, -0.1), std::domain_error);
    CHECK_THROWS_AS(alpha_sigma(s, 1.1), std::domain_error);
  }
}

TEST_CASE("vp beta validation") {
  CHECK_THROWS_AS(Schedule::vp(0.0, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::vp(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("variance preservation on the 1025 grid") {
  for (const Schedule& s : {Schedule::vp(), Schedule::gvp()}) {
    Scalar worst = 0.0;
    for (int i = 0; i < 1025; ++i) {
      const auto [alpha, sigma] = alpha_sigma(s, grid_t(i));
      worst = std::max(worst, std::abs(alpha * alpha + sigma * sigma - 1.0));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("alpha non-increasing, sigma non-decreasing, both bounded") {
  for (const Schedule& s : kAll) {
    Scalar prev_alpha = 2.0, prev_sigma = -1.0;
    for (int i = 0; i < 1025; ++i) {
      const auto [alpha, sigma] = alpha_sigma(s, grid_t(i));
      CHECK(alpha >= 0.0);
      CHECK(alpha <= 1.0);
      CHECK(sigma >= 0.0);
      CHECK(sigma <= 1.0);
      CHECK(alpha <= prev_alpha);
      CHECK(sigma >= prev_sigma);
      prev_alpha = alpha;
      prev_sigma = sigma;
    }
  }
}

TEST_CASE("log_snr pinned values and clamping") {
  CHECK(log_snr(Schedule::linear(), 0.5) == 0.0);
  CHECK(log_snr(Schedule::linear(), 0.0) == 20.0);
  CHECK(log_snr(Schedule::linear(), 1.0) == -20.0);

  const Scalar x = std::numbers::pi / 8.0;
  CHECK(log_snr(Schedule::gvp(), 0.25) ==
        doctest::Approx(2.0 * std::log(std::cos(x) / std::sin(x))).epsilon(1e-12));

  Schedule tight = Schedule::linear();
  tight.lambda_clamp = 5.0;
  CHECK(log_snr(tight, 0.0) == 5.0);
  CHECK(log_snr(tight, 1.0) == -5.0);
}

TEST_CASE("log_snr strictly decreasing at unclamped grid points") {
  for (const Schedule& s : kAll) {
    Scalar prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < 1025; ++i) {
      const Scalar lambda = log_snr(s, grid_t(i));
      const bool clamped = std::abs(lambda) >= s.lambda_clamp;
      if (have_prev && !clamped) CHECK(lambda < prev);
      prev = lambda;
      have_prev = !clamped;
    }
  }
}

TEST_CASE("corrupt pinned values") {
  Vector x0(2), eps(2);
  x0 << 2.0, 2.0;
  eps << 0.0, 0.0;
  CHECK(corrupt(Schedule::linear(), x0, eps, 0.0).isApprox(x0, 0.0));

  eps << 1.0, -1.0;
  CHECK(corrupt(Schedule::linear(), x0, eps, 1.0).isApprox(eps, 0.0));

  x0 << 2.0, 0.0;
  eps << 0.0, 2.0;
  Vector expected(2);
  expected << 1.0, 1.0;
  CHECK((corrupt(Schedule::linear(), x0, eps, 0.5) - expected).norm() == 0.0);
}

TEST_CASE("corrupt is affine in (x0, eps)") {
  Vector x0(3), eps(3);
  x0 << 0.3, -1.2, 2.0;
  eps << 1.5, 0.4, -0.7;
  for (const Schedule& s : kAll)
    for (const Scalar a : {2.0, -3.7}) {
      const Vector lhs = corrupt(s, (a * x0).eval(), (a * eps).eval(), 0.3);
      const Vector rhs = a * corrupt(s, x0, eps, 0.3);
      CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }
}

TEST_CASE("corrupt rejects mismatched dimensions") {
  Vector x0(2), eps(3);
  x0.setZero();
  eps.setZero();
  CHECK_THROWS_AS(corrupt(Schedule::linear(), x0, eps, 0.5), std::invalid_argument);
}

TEST_CASE("sigma_max per schedule") {
  CHECK(sigma_max(Schedule::linear()) == 1.0);
  CHECK(sigma_max(Schedule::gvp()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sigma_max(Schedule::vp()) ==
        doctest::Approx(std::sqrt(1.0 - std::exp(-10.05))).epsilon(1e-12));
}

TEST_CASE("schedule kind string round trip") {
  for (const ScheduleKind k : {ScheduleKind::Linear, ScheduleKind::VP, ScheduleKind::GVP})
    CHECK(schedule_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(schedule_kind_from_string("cosine"), std::invalid_argument);
}
