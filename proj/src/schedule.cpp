#include <erdlab/schedule.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace erdlab {

Schedule Schedule::vp(Scalar beta_min, Scalar beta_max) {
  if (!(beta_min > 0.0) || !(beta_min <= beta_max)) {
    throw std::invalid_argument("vp schedule requires 0 < beta_min <= beta_max");
  }
  Schedule s;
  s.kind = ScheduleKind::VP;
  s.beta_min = beta_min;
  s.beta_max = beta_max;
  return s;
}

std::pair<Scalar, Scalar> alpha_sigma(const Schedule& schedule, Scalar t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("schedule time t must lie in [0,1], got " + std::to_string(t));
  }
  switch (schedule.kind) {
    case ScheduleKind::Linear:
      return {1.0 - t, t};
    case ScheduleKind::VP: {
      // Closed-form integral of the linear beta(t); exact, no quadrature.
      const Scalar b = schedule.beta_min * t + (schedule.beta_max - schedule.beta_min) * t * t / 2.0;
      const Scalar alpha = std::exp(-b / 2.0);
      return {alpha, std::sqrt(std::max<Scalar>(0.0, 1.0 - alpha * alpha))};
    }
    case ScheduleKind::GVP: {
      const Scalar half_pi = std::numbers::pi / 2.0;
      return {std::cos(t * half_pi), std::sin(t * half_pi)};
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

Scalar log_snr(const Schedule& schedule, Scalar t) {
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  Scalar lambda;
  if (sigma == 0.0) {
    lambda = schedule.lambda_clamp;
  } else if (alpha == 0.0) {
    lambda = -schedule.lambda_clamp;
  } else {
    lambda = 2.0 * (std::log(alpha) - std::log(sigma));
  }
  return std::clamp(lambda, -schedule.lambda_clamp, schedule.lambda_clamp);
}

Scalar sigma_max(const Schedule& schedule) { return alpha_sigma(schedule, 1.0).second; }

Vector corrupt(const Schedule& schedule, const Eigen::Ref<const Vector>& x0,
               const Eigen::Ref<const Vector>& eps, Scalar t) {
  if (x0.size() != eps.size()) {
    throw std::invalid_argument("corrupt: x0 and eps dimensions differ");
  }
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  return alpha * x0 + sigma * eps;
}

const char* to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Linear: return "linear";
    case ScheduleKind::VP: return "vp";
    case ScheduleKind::GVP: return "gvp";
  }
  return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "vp") return ScheduleKind::VP;
  if (name == "gvp") return ScheduleKind::GVP;
  throw std::invalid_argument("unknown schedule '" + name + "' (expected linear|vp|gvp)");
}

}  // namespace erdlab
