#include "impulse_game/policy.hpp"

#include <cmath>
#include <utility>

#include "impulse_game/errors.hpp"

namespace impulse_game {

const char* to_string(Region region) {
  switch (region) {
    case Region::kBelow:
      return "below";
    case Region::kInterior:
      return "interior";
    case Region::kAbove:
      return "above";
  }
  return "?";
}

Thresholds thresholds_from(const GameParams& p, double p2, double q2) {
  Thresholds th;
  th.alpha = -(q2 + p.c) / p2;
  th.beta = (p.d - q2) / p2;
  th.ell1 = (-p.c - q2 - std::sqrt(2.0 * p.C * p2)) / p2;
  th.ell2 = (-q2 + p.d + std::sqrt(2.0 * p.D * p2)) / p2;
  return th;
}

Region classify(const Thresholds& th, double x) {
  if (x <= th.ell1) return Region::kBelow;
  if (x >= th.ell2) return Region::kAbove;
  return Region::kInterior;
}

ThresholdPolicy::ThresholdPolicy(CoefficientPath path,
                                 std::vector<Thresholds> nodes)
    : path_(std::move(path)), nodes_(std::move(nodes)) {}

Thresholds ThresholdPolicy::at(double t) const {
  const CoefficientSample s = path_.at(t);
  return thresholds_from(path_.params(), s.value.p2, s.value.q2);
}

ThresholdPolicy build_policy(const CoefficientPath& path,
                             const GameParams& params) {
  std::vector<Thresholds> nodes;
  nodes.reserve(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    const CoefficientSample s = path.node(k);
    if (!(s.value.p2 > 0.0)) throw ConvexityViolation(k, s.t, s.value.p2);
    const Thresholds th = thresholds_from(params, s.value.p2, s.value.q2);
    if (!th.ordered()) throw OrderingViolation(k, s.t);
    nodes.push_back(th);
  }
  return ThresholdPolicy(path, std::move(nodes));
}

double gamma_star(const CoefficientSample& s, const GameParams& p, double x) {
  return -(p.b / p.r1) * (s.value.p1 * x + s.value.q1);
}

double gamma_star(const CoefficientPath& path, double t, double x) {
  return gamma_star(path.at(t), path.params(), x);
}

double closed_loop_drift(const CoefficientSample& s, double b_x, double x) {
  return s.a_x * x + b_x * s.value.q1;
}

std::optional<Impulse> impulse_map(const Thresholds& th, double x) {
  switch (classify(th, x)) {
    case Region::kBelow:
      return Impulse{th.alpha, th.alpha - x};
    case Region::kAbove:
      return Impulse{th.beta, th.beta - x};
    case Region::kInterior:
      break;
  }
  return std::nullopt;
}

std::optional<Impulse> impulse_map(const ThresholdPolicy& policy, double t,
                                   double x) {
  return impulse_map(policy.at(t), x);
}

double value_v2(const CoefficientSample& s, const Thresholds& th,
                const GameParams& p, double x) {
  switch (classify(th, x)) {
    case Region::kBelow:
      return phi2(s, th.alpha) + p.C + p.c * (th.alpha - x);
    case Region::kAbove:
      return phi2(s, th.beta) + p.D + p.d * (x - th.beta);
    case Region::kInterior:
      break;
  }
  return phi2(s, x);
}

double value_v2(const CoefficientPath& path, const ThresholdPolicy& policy,
                double t, double x) {
  if (t >= path.horizon()) return terminal_cost_p2(path.params(), x);
  const CoefficientSample s = path.at(t);
  return value_v2(s, policy.at(t), path.params(), x);
}

double value_v1(const CoefficientPath& path, const ThresholdPolicy& /*policy*/,
                double t, double x, const RolloutHook& rollout_hook) {
  if (t >= path.horizon()) return terminal_cost_p1(path.params(), x);
  return rollout_hook(t, x);
}

double phi1_no_jump(const CoefficientPath& path, double t, double x) {
  return phi1(path.at(t), x);
}

ValueSample value_sample(const CoefficientPath& path,
                         const ThresholdPolicy& policy, double t, double x,
                         const RolloutHook& rollout_hook) {
  ValueSample v;
  v.t = t;
  v.x = x;
  v.v1 = value_v1(path, policy, t, x, rollout_hook);
  v.v2 = value_v2(path, policy, t, x);
  v.region = classify(policy.at(t), x);
  return v;
}

}  // namespace impulse_game
