// Equilibrium feedback objects built from a CoefficientPath.
//
// Player 1 plays the linear feedback u* = -(b/r1)(p1 x + q1). Player 2 waits
// while ell1(t) < x < ell2(t), lifts the state to alpha(t) when x <= ell1(t)
// and drops it to beta(t) when x >= ell2(t).

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "impulse_game/model.hpp"
#include "impulse_game/riccati.hpp"

namespace impulse_game {

enum class Region { kBelow, kInterior, kAbove };

const char* to_string(Region region);

struct Thresholds {
  double ell1 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double ell2 = 0.0;

  bool ordered() const { return ell1 < alpha && alpha < beta && beta < ell2; }
};

// Requires p2 > 0; callers check convexity first.
Thresholds thresholds_from(const GameParams& params, double p2, double q2);

// Closed intervention set: x == ell1 counts as below, x == ell2 as above.
Region classify(const Thresholds& th, double x);

class ThresholdPolicy {
 public:
  ThresholdPolicy(CoefficientPath path, std::vector<Thresholds> nodes);

  std::span<const double> times() const { return path_.times(); }
  std::size_t size() const { return nodes_.size(); }
  const Thresholds& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<Thresholds>& nodes() const { return nodes_; }

  // Between nodes: exact p2 with interpolated q2, as in the path.
  Thresholds at(double t) const;

  const CoefficientPath& path() const { return path_; }
  const GameParams& params() const { return path_.params(); }

 private:
  CoefficientPath path_;
  std::vector<Thresholds> nodes_;
};

// Throws ConvexityViolation if any p2 node is <= 0, OrderingViolation if the
// four curves are not strictly ordered at some node.
ThresholdPolicy build_policy(const CoefficientPath& path,
                             const GameParams& params);

double gamma_star(const CoefficientPath& path, double t, double x);
double gamma_star(const CoefficientSample& s, const GameParams& params,
                  double x);

// dx/dt = a_x(t) x + b_x q1(t) under u*.
double closed_loop_drift(const CoefficientSample& s, double b_x, double x);

struct Impulse {
  double target = 0.0;
  double xi = 0.0;
};

std::optional<Impulse> impulse_map(const ThresholdPolicy& policy, double t,
                                   double x);
std::optional<Impulse> impulse_map(const Thresholds& th, double x);

// Piecewise form: Phi2 inside, linear branches outside. At t = T this is the
// left limit; the overload below returns the terminal cost there, since no
// impulse may happen at T.
double value_v2(const CoefficientSample& s, const Thresholds& th,
                const GameParams& params, double x);
double value_v2(const CoefficientPath& path, const ThresholdPolicy& policy,
                double t, double x);

// Equilibrium cost-to-go of player 1 from (t, x).
using RolloutHook = std::function<double(double t, double x)>;

// Player 1's value is path dependent across impulses, so it is evaluated
// through an equilibrium rollout supplied by the caller.
double value_v1(const CoefficientPath& path, const ThresholdPolicy& policy,
                double t, double x, const RolloutHook& rollout_hook);

// Interior quadratic with the jump-free n1; agrees with value_v1 only when no
// impulse happens on [t, T].
double phi1_no_jump(const CoefficientPath& path, double t, double x);

struct ValueSample {
  double t = 0.0;
  double x = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  Region region = Region::kInterior;
};

ValueSample value_sample(const CoefficientPath& path,
                         const ThresholdPolicy& policy, double t, double x,
                         const RolloutHook& rollout_hook);

}  // namespace impulse_game
