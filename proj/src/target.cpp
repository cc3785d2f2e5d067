#include <erdlab/target.hpp>

#include <cmath>
#include <stdexcept>

namespace erdlab {

std::pair<Scalar, Scalar> target_coeffs(TargetKind target, const Schedule& schedule, Scalar t) {
  switch (target) {
    case TargetKind::Eps: return {0.0, 1.0};
    case TargetKind::X0: return {1.0, 0.0};
    case TargetKind::V: {
      const auto [alpha, sigma] = alpha_sigma(schedule, t);
      return {-sigma, alpha};
    }
    case TargetKind::U: return {-1.0, 1.0};
  }
  throw std::logic_error("unreachable target kind");
}

Vector make_target(TargetKind target, const Schedule& schedule,
                   const Eigen::Ref<const Vector>& x0, const Eigen::Ref<const Vector>& eps,
                   Scalar t) {
  if (x0.size() != eps.size()) {
    throw std::invalid_argument("make_target: x0 and eps dimensions differ");
  }
  const auto [cx, ceps] = target_coeffs(target, schedule, t);
  return cx * x0 + ceps * eps;
}

Scalar recoverability(TargetKind target, const Schedule& schedule, Scalar t) {
  const auto [alpha, sigma] = alpha_sigma(schedule, t);
  const auto [cx, ceps] = target_coeffs(target, schedule, t);
  return std::hypot(cx * alpha, ceps * sigma);
}

const char* to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Eps: return "eps";
    case TargetKind::X0: return "x0";
    case TargetKind::V: return "v";
    case TargetKind::U: return "u";
  }
  return "?";
}

TargetKind target_kind_from_string(const std::string& name) {
  if (name == "eps") return TargetKind::Eps;
  if (name == "x0") return TargetKind::X0;
  if (name == "v") return TargetKind::V;
  if (name == "u") return TargetKind::U;
  throw std::invalid_argument("unknown target '" + name + "' (expected eps|x0|v|u)");
}

}  // namespace erdlab
