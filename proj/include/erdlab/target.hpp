#pragma once

#include <string>
#include <utility>

#include <erdlab/schedule.hpp>
#include <erdlab/types.hpp>

namespace erdlab {

/// Prediction target family y = c_x(t)*x0 + c_eps(t)*eps.
///
///   Eps: (0, 1)            X0: (1, 0)
///   V:   (-sigma, alpha)   U:  (-1, 1)
enum class TargetKind { Eps, X0, V, U };

/// Coefficient pair (c_x(t), c_eps(t)) for the target under a schedule.
std::pair<Scalar, Scalar> target_coeffs(TargetKind target, const Schedule& schedule, Scalar t);

/// y = c_x(t)*x0 + c_eps(t)*eps; throws std::invalid_argument on dimension
/// mismatch.
Vector make_target(TargetKind target, const Schedule& schedule,
                   const Eigen::Ref<const Vector>& x0, const Eigen::Ref<const Vector>& eps,
                   Scalar t);

/// Recoverability score omega(t) = sqrt((c_x*alpha)^2 + (c_eps*sigma)^2),
/// the RMS amplitude of the target components as expressed through the
/// corrupted input. Reduces to alpha, sigma, sqrt(alpha^2+sigma^2) and
/// sqrt(2)*alpha*sigma for the X0, Eps, U and V targets.
Scalar recoverability(TargetKind target, const Schedule& schedule, Scalar t);

const char* to_string(TargetKind kind);
TargetKind target_kind_from_string(const std::string& name);

}  // namespace erdlab
