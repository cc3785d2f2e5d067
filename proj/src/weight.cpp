#include <erdlab/weight.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace erdlab {

WeightRule WeightRule::make(WeightKind kind, TargetKind target, const Schedule& schedule,
                            Scalar gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("WeightRule: gamma must be positive");
  return WeightRule(kind, target, schedule, gamma);
}

WeightRule::WeightRule(WeightKind kind, TargetKind target, const Schedule& schedule, Scalar gamma)
    : kind_(kind), target_(target), schedule_(schedule), gamma_(gamma) {
  if (kind_ == WeightKind::Uniform) {
    normalizer_ = 1.0;
    return;
  }
  constexpr int n = 1025;
  Scalar acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const Scalar t = static_cast<Scalar>(i) / (n - 1);
    const Scalar w = raw(t);
    acc += (i == 0 || i == n - 1) ? 0.5 * w : w;
  }
  normalizer_ = acc / (n - 1);
  if (!(normalizer_ > 0.0) || !std::isfinite(normalizer_))
    throw std::invalid_argument("WeightRule: degenerate weight profile, normalizer is not positive");
}

Scalar WeightRule::raw(Scalar t) const {
  switch (kind_) {
    case WeightKind::Uniform:
      return 1.0;
    case WeightKind::Erd:
      return recoverability(target_, schedule_, t);
    case WeightKind::ClampedSnr: {
      const auto [alpha, sigma] = alpha_sigma(schedule_, t);
      if (sigma == 0.0) return 0.0;
      const Scalar snr = (alpha * alpha) / (sigma * sigma);
      return snr <= gamma_ ? 1.0 : gamma_ / snr;
    }
  }
  throw std::logic_error("WeightRule: unknown kind");
}

Scalar WeightRule::operator()(Scalar t) const { return raw(t) / normalizer_; }

Scalar loss_weight(const WeightRule& rule, TargetKind target, const Schedule& schedule, Scalar t) {
  if (target != rule.target())
    throw std::invalid_argument("loss_weight: rule was built for target " +
                                std::string(to_string(rule.target())) + ", queried with " +
                                to_string(target));
  if (!(schedule == rule.schedule()))
    throw std::invalid_argument("loss_weight: rule was built for schedule " +
                                std::string(to_string(rule.schedule().kind)) +
                                ", queried with a different schedule");
  return rule(t);
}

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::Uniform: return "uniform";
    case WeightKind::Erd: return "erd";
    case WeightKind::ClampedSnr: return "clamped_snr";
  }
  return "?";
}

WeightKind weight_kind_from_string(const std::string& name) {
  if (name == "uniform") return WeightKind::Uniform;
  if (name == "erd") return WeightKind::Erd;
  if (name == "clamped_snr") return WeightKind::ClampedSnr;
  throw std::invalid_argument("unknown weight kind '" + name +
                              "' (expected uniform, erd, clamped_snr)");
}

}  // namespace erdlab
