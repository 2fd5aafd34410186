#include "impulse_game/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "impulse_game/errors.hpp"

namespace impulse_game {
namespace {

class ClosedLoop {
 public:
  ClosedLoop(const CoefficientPath& path, const ThresholdPolicy& policy)
      : path_(path), policy_(policy), params_(path.params()),
        b_x_(path.constants().b_x) {}

  double drift(double t, double x) const {
    return closed_loop_drift(path_.at(t), b_x_, x);
  }

  double rk4(double t, double x, double h) const {
    const double k1 = drift(t, x);
    const double k2 = drift(t + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = drift(t + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = drift(t + h, x + h * k3);
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  // > 0 strictly inside the continuation interval.
  double exit_margin(double t, double x) const {
    const Thresholds th = policy_.at(t);
    return std::min(x - th.ell1, th.ell2 - x);
  }

  double control(double t, double x) const {
    return gamma_star(path_.at(t), params_, x);
  }

  // Simpson's rule over [t, t + h]; the midpoint state comes from a half RK4
  // step so the quadrature sees the same trajectory as the integrator.
  void accumulate(double t, double x, double h, double x_end, double& j1,
                  double& j2) const {
    const double xm = rk4(t, x, 0.5 * h);
    const double tm = t + 0.5 * h, te = t + h;
    const double f1 = running_cost_p1(params_, x, control(t, x)) +
                      4.0 * running_cost_p1(params_, xm, control(tm, xm)) +
                      running_cost_p1(params_, x_end, control(te, x_end));
    const double f2 = running_cost_p2(params_, x) +
                      4.0 * running_cost_p2(params_, xm) +
                      running_cost_p2(params_, x_end);
    j1 += h / 6.0 * f1;
    j2 += h / 6.0 * f2;
  }

  const GameParams& params() const { return params_; }

 private:
  const CoefficientPath& path_;
  const ThresholdPolicy& policy_;
  GameParams params_;
  double b_x_;
};

}  // namespace

Trajectory rollout(const CoefficientPath& path, const ThresholdPolicy& policy,
                   double t0, double x0, const RolloutOptions& options) {
  const GameParams& p = path.params();
  const double T = p.T;
  if (!(t0 >= 0.0 && t0 < T)) {
    throw std::invalid_argument("rollout needs 0 <= t0 < T");
  }
  const double step =
      options.step > 0.0 ? options.step
                         : T / static_cast<double>(kDefaultRiccatiSteps);
  const ClosedLoop loop(path, policy);

  Trajectory traj;
  traj.t0 = t0;
  traj.x0 = x0;
  double t = t0, x = x0, j1 = 0.0, j2 = 0.0;
  Segment seg;

  auto record = [&](double ts, double xs) {
    seg.t.push_back(ts);
    seg.x.push_back(xs);
    seg.u.push_back(loop.control(ts, xs));
    seg.j1.push_back(j1);
    seg.j2.push_back(j2);
  };

  auto fire = [&](double tau, double x_minus) {
    const std::optional<Impulse> imp = impulse_map(policy.at(tau), x_minus);
    if (!imp) throw std::logic_error("impulse requested inside continuation set");
    if (!traj.events.empty() && tau - traj.events.back().tau < kChatterWindow) {
      throw ImpulseBudgetExceeded(
          "impulses at t = " + std::to_string(traj.events.back().tau) +
          " and t = " + std::to_string(tau) + " are closer than " +
          std::to_string(kChatterWindow) + " (chattering)");
    }
    ImpulseEvent ev;
    ev.tau = tau;
    ev.x_minus = x_minus;
    ev.x_plus = imp->target;
    ev.xi = imp->target - x_minus;
    ev.cost_p1 = player1_impulse_cost(p, ev.xi);
    ev.cost_p2 = impulse_cost(p, ev.xi);
    traj.events.push_back(ev);
    if (options.impulse_budget && traj.events.size() > *options.impulse_budget) {
      throw ImpulseBudgetExceeded(
          std::to_string(traj.events.size()) + " impulses exceed the bound " +
          std::to_string(*options.impulse_budget));
    }
    j1 += ev.cost_p1;
    j2 += ev.cost_p2;
    traj.segments.push_back(std::move(seg));
    seg = Segment{};
    record(tau, ev.x_plus);
    return ev.x_plus;
  };

  record(t, x);
  if (T - t0 > kEventTimeTolerance && loop.exit_margin(t0, x0) <= 0.0) {
    x = fire(t0, x0);
  }

  std::size_t steps = 0;
  while (t < T) {
    const double remaining = T - t;
    double h = std::min(step, remaining);
    double x1 = loop.rk4(t, x, h);
    if (!std::isfinite(x1)) throw NonFinite(steps, "state");
    const bool crossed = loop.exit_margin(t + h, x1) <= 0.0;
    if (crossed) {
      double lo = 0.0, hi = h;
      while (hi - lo >= kEventTimeTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (loop.exit_margin(t + mid, loop.rk4(t, x, mid)) <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      h = hi;
      x1 = loop.rk4(t, x, h);
    }
    loop.accumulate(t, x, h, x1, j1, j2);
    t = h == remaining ? T : t + h;
    x = x1;
    record(t, x);
    ++steps;
    // An exit this close to T would be an impulse at the terminal time.
    if (crossed && T - t > kEventTimeTolerance) x = fire(t, x);
  }

  j1 += terminal_cost_p1(p, x);
  j2 += terminal_cost_p2(p, x);
  traj.segments.push_back(std::move(seg));
  traj.j1 = j1;
  traj.j2 = j2;
  traj.terminal_state = x;
  return traj;
}

RolloutHook make_rollout_hook(const CoefficientPath& path,
                              const ThresholdPolicy& policy,
                              RolloutOptions options) {
  // Holds references: path and policy must outlive the hook.
  return [&path, &policy, options](double t, double x) {
    return rollout(path, policy, t, x, options).j1;
  };
}

ImpulseBound impulse_bound_breakdown(const GameParams& params,
                                     const StateBox& box) {
  validate(box);
  const double far = std::max(std::abs(box.lo - params.rho2),
                              std::abs(box.hi - params.rho2));
  ImpulseBound b;
  b.running_sup = 0.5 * params.w2 * far * far;
  b.terminal_sup = 0.5 * params.s2 * far * far;
  b.mu = min_intervention_cost(params);
  const double ratio = 2.0 * (params.T * b.running_sup + b.terminal_sup) / b.mu;
  b.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio)));
  return b;
}

std::size_t impulse_bound(const GameParams& params, const StateBox& box) {
  return impulse_bound_breakdown(params, box).k;
}

AdmissibilityReport admissibility_check(const Trajectory& traj,
                                        const ThresholdPolicy& policy,
                                        double tol) {
  AdmissibilityReport report;
  const double T = policy.params().T;
  const std::size_t n_events = traj.events.size();
  auto fail = [&](std::size_t index, std::string msg) {
    report.violations.push_back({index, std::move(msg)});
  };

  if (traj.segments.size() != n_events + 1) {
    fail(n_events, "expected one more segment than events");
    return report;
  }

  for (std::size_t i = 0; i < n_events; ++i) {
    const ImpulseEvent& ev = traj.events[i];
    const std::string tag = "event " + std::to_string(i) + ": ";
    if (!(ev.tau < T)) fail(i, tag + "impulse at or after the horizon");
    if (ev.tau < traj.t0) fail(i, tag + "impulse before the start time");
    if (i > 0 && !(ev.tau > traj.events[i - 1].tau)) {
      fail(i, tag + "impulse times not strictly increasing");
    }

    const Thresholds th = policy.at(ev.tau);
    const bool at_start = ev.tau == traj.t0 && i == 0;
    if (at_start) {
      if (classify(th, ev.x_minus) == Region::kInterior) {
        fail(i, tag + "initial impulse from inside the continuation set");
      }
    } else if (std::abs(ev.x_minus - th.ell1) > tol &&
               std::abs(ev.x_minus - th.ell2) > tol) {
      fail(i, tag + "pre-impulse state is not on a boundary of the "
                    "continuation set");
    }

    const bool from_below = ev.x_minus <= th.ell1 + tol;
    const bool from_above = ev.x_minus >= th.ell2 - tol;
    const double expected = from_below ? th.alpha : th.beta;
    if (!from_below && !from_above) {
      fail(i, tag + "impulse from an interior state");
    } else if (std::abs(ev.x_plus - expected) > 1e-9) {
      fail(i, tag + "post-impulse state is not the reset target");
    }
    if (std::abs(ev.xi - (ev.x_plus - ev.x_minus)) > 1e-12) {
      fail(i, tag + "impulse size inconsistent with the jump");
    }

    const Segment& before = traj.segments[i];
    if (before.x.empty() || before.x.back() != ev.x_minus) {
      fail(i, tag + "segment does not end at the pre-impulse state");
    }
  }

  for (std::size_t s = 0; s < traj.segments.size(); ++s) {
    const Segment& seg = traj.segments[s];
    // The final sample may sit on the boundary (it triggers the next event).
    for (std::size_t j = 0; j + 1 < seg.t.size(); ++j) {
      if (classify(policy.at(seg.t[j]), seg.x[j]) != Region::kInterior) {
        fail(std::min(s, n_events),
             "segment " + std::to_string(s) + " leaves the continuation set "
             "at t = " + std::to_string(seg.t[j]) + " without an impulse");
        break;
      }
    }
  }
  return report;
}

}  // namespace impulse_game
