#include "impulse_game/commands.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "impulse_game/errors.hpp"
#include "impulse_game/interpolation.hpp"

namespace impulse_game {
namespace {

std::ofstream open_output(const std::filesystem::path& file) {
  std::filesystem::create_directories(file.parent_path().empty()
                                          ? std::filesystem::path(".")
                                          : file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

template <typename... Ts>
void row(std::ostream& out, const Ts&... cells) {
  bool first = true;
  auto put = [&](const auto& cell) {
    if (!first) out << ',';
    first = false;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(cell)>>) {
      out << format_number(static_cast<double>(cell));
    } else {
      out << cell;
    }
  };
  (put(cells), ...);
  out << '\n';
}

std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Solution solve(const GameParams& params, std::size_t n_steps) {
  const GameParams p = validate(params);
  const RiccatiConstants k = riccati_constants(p);
  CoefficientPath path = solve_backward(p, k, n_steps);
  ThresholdPolicy policy = build_policy(path, p);
  return {std::move(path), std::move(policy)};
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_thresholds_csv(std::ostream& out, const ThresholdPolicy& policy) {
  out << "t,ell1,alpha,beta,ell2\n";
  const auto times = policy.times();
  for (std::size_t k = 0; k < policy.size(); ++k) {
    const Thresholds& th = policy.node(k);
    row(out, times[k], th.ell1, th.alpha, th.beta, th.ell2);
  }
}

void write_coefficients_csv(std::ostream& out, const CoefficientPath& path) {
  out << "t,p1,q1,n1,p2,q2,n2,a_x\n";
  for (std::size_t k = 0; k < path.size(); ++k) {
    const CoefficientSample s = path.node(k);
    row(out, s.t, s.value.p1, s.value.q1, s.value.n1, s.value.p2, s.value.q2,
        s.value.n2, s.a_x);
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,u\n";
  for (const Segment& seg : traj.segments) {
    for (std::size_t i = 0; i < seg.t.size(); ++i) row(out, seg.t[i], seg.x[i], seg.u[i]);
  }
}

void write_events_csv(std::ostream& out, const Trajectory& traj) {
  out << "tau,x_minus,x_plus,xi,cost_p1,cost_p2\n";
  for (const ImpulseEvent& ev : traj.events) {
    row(out, ev.tau, ev.x_minus, ev.x_plus, ev.xi, ev.cost_p1, ev.cost_p2);
  }
}

void write_report_csv(std::ostream& out, const VerificationReport& report) {
  out << "t,x,region,hjb1_residual,qvi_residual,gap,complementarity\n";
  for (const NodeRecord& n : report.nodes) {
    row(out, n.t, n.x, to_string(n.region), n.hjb1_residual, n.qvi_residual,
        n.gap, n.complementarity);
  }
}

void write_boundary_roots_csv(std::ostream& out, const VerificationReport& report) {
  out << "t,ell1,alpha,beta,ell2,x11,x22,theta_alpha,theta_beta,margin_ell1,"
         "margin_ell2,convexity_margin\n";
  for (const TimeRecord& tr : report.times) {
    const Theorem2Point& th2 = tr.theorem2;
    row(out, tr.t, tr.thresholds.ell1, tr.thresholds.alpha, tr.thresholds.beta,
        tr.thresholds.ell2, th2.x11, th2.x22, th2.theta_alpha, th2.theta_beta,
        th2.margin_ell1, th2.margin_ell2, tr.convexity_margin);
  }
}

void write_summary(std::ostream& out, const VerificationReport& report) {
  for (const ConditionSummary& c : report.summary) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name
        << "  worst=" << format_number(c.worst)
        << " limit=" << format_number(c.threshold)
        << " at t=" << format_number(c.t) << " x=" << format_number(c.x);
    if (c.inapplicable > 0) out << " (" << c.inapplicable << " nodes without real root)";
    out << '\n';
  }
  out << (report.all_pass() ? "verification passed" : "verification FAILED")
      << '\n';
}

std::filesystem::path trajectory_file(const RunConfig& cfg, double x0) {
  return cfg.output_dir / ("trajectory_" + compact(x0) + ".csv");
}

std::filesystem::path events_file(const RunConfig& cfg, double x0) {
  return cfg.output_dir / ("events_" + compact(x0) + ".csv");
}

std::filesystem::path values_file(const RunConfig& cfg, double t) {
  return cfg.output_dir / ("values_t" + compact(t) + ".csv");
}

Solution cmd_solve(const RunConfig& cfg) {
  Solution sol = solve(cfg.params, cfg.n_steps);
  auto thresholds = open_output(cfg.output_dir / "thresholds.csv");
  write_thresholds_csv(thresholds, sol.policy);
  auto coefficients = open_output(cfg.output_dir / "coefficients.csv");
  write_coefficients_csv(coefficients, sol.path);
  return sol;
}

std::vector<Trajectory> cmd_simulate(const RunConfig& cfg) {
  if (cfg.initial_states.empty()) {
    throw ConfigError(0, "simulate needs initial_states");
  }
  const Solution sol = solve(cfg.params, cfg.n_steps);
  RolloutOptions opts;
  opts.step = cfg.sim_step;
  opts.impulse_budget = impulse_bound(cfg.params, cfg.box);

  std::vector<Trajectory> out;
  auto costs = open_output(cfg.output_dir / "costs.csv");
  costs << "x0,J1,J2,n_events\n";
  for (double x0 : cfg.initial_states) {
    Trajectory traj = rollout(sol.path, sol.policy, 0.0, x0, opts);
    auto tf = open_output(trajectory_file(cfg, x0));
    write_trajectory_csv(tf, traj);
    auto ef = open_output(events_file(cfg, x0));
    write_events_csv(ef, traj);
    row(costs, x0, traj.j1, traj.j2, traj.events.size());
    out.push_back(std::move(traj));
  }
  return out;
}

std::vector<ValueSample> cmd_value(const RunConfig& cfg, double t) {
  if (!(t >= 0.0 && t <= cfg.params.T)) {
    throw ConfigError(0, "value: t must lie in [0, T]");
  }
  const Solution sol = solve(cfg.params, cfg.n_steps);
  RolloutOptions opts;
  opts.step = cfg.sim_step;
  opts.impulse_budget = impulse_bound(cfg.params, cfg.box);
  const RolloutHook hook = make_rollout_hook(sol.path, sol.policy, opts);

  std::vector<ValueSample> samples;
  auto out = open_output(values_file(cfg, t));
  out << "x0,V1,V2,region\n";
  for (double x : uniform_grid(cfg.box.lo, cfg.box.hi, cfg.nx)) {
    ValueSample v = value_sample(sol.path, sol.policy, t, x, hook);
    row(out, v.x, v.v1, v.v2, to_string(v.region));
    samples.push_back(v);
  }
  return samples;
}

VerificationReport cmd_verify(const RunConfig& cfg, std::ostream& summary) {
  const Solution sol = solve(cfg.params, cfg.n_steps);
  VerifyOptions opts;
  opts.nt = cfg.nt;
  opts.nx = cfg.nx;
  VerificationReport report =
      verify_equilibrium(sol.path, sol.policy, cfg.box, opts);
  auto out = open_output(cfg.output_dir / "report.csv");
  write_report_csv(out, report);
  auto th2 = open_output(cfg.output_dir / "boundary_roots.csv");
  write_boundary_roots_csv(th2, report);
  write_summary(summary, report);
  return report;
}

ImpulseBound cmd_bound(const RunConfig& cfg, std::ostream& out) {
  const ImpulseBound b = impulse_bound_breakdown(cfg.params, cfg.box);
  out << "K = " << b.k << '\n'
      << "sup running cost (h2) = " << format_number(b.running_sup) << '\n'
      << "sup terminal cost (s2) = " << format_number(b.terminal_sup) << '\n'
      << "mu = min(C, D) = " << format_number(b.mu) << '\n';
  return b;
}

}  // namespace impulse_game
