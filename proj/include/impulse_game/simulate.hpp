// Forward equilibrium play: closed-loop dynamics between impulses, threshold
// crossings located by bisection, costs of both players accumulated.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "impulse_game/model.hpp"
#include "impulse_game/policy.hpp"
#include "impulse_game/riccati.hpp"

namespace impulse_game {

struct ImpulseEvent {
  double tau = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double xi = 0.0;
  double cost_p1 = 0.0;
  double cost_p2 = 0.0;
};

// Samples of one jump-free stretch. j1/j2 hold the costs accumulated since the
// start of the rollout, including impulses before the segment.
struct Segment {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> j1;
  std::vector<double> j2;
};

struct Trajectory {
  double t0 = 0.0;
  double x0 = 0.0;
  std::vector<Segment> segments;
  std::vector<ImpulseEvent> events;
  double j1 = 0.0;
  double j2 = 0.0;
  double terminal_state = 0.0;
};

struct RolloutOptions {
  double step = 0.0;  // <= 0 selects T / 4096
  // Exceeding this many impulses raises ImpulseBudgetExceeded.
  std::optional<std::size_t> impulse_budget;
};

inline constexpr double kEventTimeTolerance = 1e-10;
inline constexpr double kChatterWindow = 1e-8;

Trajectory rollout(const CoefficientPath& path, const ThresholdPolicy& policy,
                   double t0, double x0, const RolloutOptions& options = {});

RolloutHook make_rollout_hook(const CoefficientPath& path,
                              const ThresholdPolicy& policy,
                              RolloutOptions options = {});

struct ImpulseBound {
  double running_sup = 0.0;   // sup over the box of 1/2 w2 (x - rho2)^2
  double terminal_sup = 0.0;  // sup over the box of 1/2 s2 (x - rho2)^2
  double mu = 0.0;            // min(C, D)
  std::size_t k = 0;
};

ImpulseBound impulse_bound_breakdown(const GameParams& params,
                                     const StateBox& box);
std::size_t impulse_bound(const GameParams& params, const StateBox& box);

struct AdmissibilityViolation {
  std::size_t event_index = 0;  // events.size() for segment-level issues
  std::string message;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks that every event is a first exit time of the continuation set.
AdmissibilityReport admissibility_check(const Trajectory& traj,
                                        const ThresholdPolicy& policy,
                                        double state_tolerance = 1e-7);

}  // namespace impulse_game
