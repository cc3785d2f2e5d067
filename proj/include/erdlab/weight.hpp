#pragma once

#include <string>

#include <erdlab/schedule.hpp>
#include <erdlab/target.hpp>

namespace erdlab {

enum class WeightKind { Uniform, Erd, ClampedSnr };

/// Loss-weight rule over diffusion time, normalized so the mean weight under
/// t ~ Uniform[0,1] is 1.
///
///   Uniform:    w(t) = 1
///   Erd:        w(t) proportional to recoverability(t)
///   ClampedSnr: w(t) proportional to min(SNR(t), gamma)/SNR(t)
///
/// The normalizer is fixed at construction by 1025-point trapezoid quadrature
/// against the (target, schedule) pair the rule was built for; evaluating the
/// rule against a different pair is a contract error.
class WeightRule {
 public:
  static WeightRule make(WeightKind kind, TargetKind target, const Schedule& schedule,
                         Scalar gamma = 5.0);

  WeightKind kind() const { return kind_; }
  TargetKind target() const { return target_; }
  const Schedule& schedule() const { return schedule_; }
  Scalar gamma() const { return gamma_; }
  Scalar normalizer() const { return normalizer_; }

  /// Normalized weight at time t for the rule's own (target, schedule).
  Scalar operator()(Scalar t) const;

 private:
  WeightRule(WeightKind kind, TargetKind target, const Schedule& schedule, Scalar gamma);

  Scalar raw(Scalar t) const;

  WeightKind kind_;
  TargetKind target_;
  Schedule schedule_;
  Scalar gamma_;
  Scalar normalizer_ = 1.0;
};

/// Weight for (target, schedule) at t; throws std::invalid_argument if the
/// rule was constructed against a different target or schedule.
Scalar loss_weight(const WeightRule& rule, TargetKind target, const Schedule& schedule, Scalar t);

const char* to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& name);

}  // namespace erdlab
