#pragma once

#include <string>
#include <utility>

#include <erdlab/types.hpp>

namespace erdlab {

enum class ScheduleKind { Linear, VP, GVP };

/// Continuous-time noise schedule on t in [0,1].
///
///   Linear:  alpha = 1 - t,        sigma = t
///   VP:      alpha = exp(-B(t)/2), sigma = sqrt(1 - alpha^2),
///            B(t) = beta_min*t + (beta_max - beta_min)*t^2/2
///   GVP:     alpha = cos(t*pi/2),  sigma = sin(t*pi/2)
///
/// VP and GVP are variance preserving (alpha^2 + sigma^2 = 1).
struct Schedule {
  ScheduleKind kind = ScheduleKind::Linear;
  Scalar beta_min = 0.1;   // VP only
  Scalar beta_max = 20.0;  // VP only
  Scalar lambda_clamp = 20.0;

  static Schedule linear() { return Schedule{ScheduleKind::Linear}; }
  static Schedule vp(Scalar beta_min = 0.1, Scalar beta_max = 20.0);
  static Schedule gvp() { return Schedule{ScheduleKind::GVP}; }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// (alpha(t), sigma(t)); throws std::domain_error for t outside [0,1].
std::pair<Scalar, Scalar> alpha_sigma(const Schedule& schedule, Scalar t);

/// log(alpha^2/sigma^2) clamped to [-lambda_clamp, +lambda_clamp]. The clamp
/// only engages at the degenerate endpoints sigma=0 or alpha=0.
Scalar log_snr(const Schedule& schedule, Scalar t);

/// sigma(1), the terminal noise level of the schedule.
Scalar sigma_max(const Schedule& schedule);

/// x_t = alpha(t)*x0 + sigma(t)*eps; throws std::invalid_argument on
/// dimension mismatch.
Vector corrupt(const Schedule& schedule, const Eigen::Ref<const Vector>& x0,
               const Eigen::Ref<const Vector>& eps, Scalar t);

const char* to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

}  // namespace erdlab
