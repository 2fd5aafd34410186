#include "impulse_game/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "impulse_game/errors.hpp"
#include "impulse_game/interpolation.hpp"

namespace impulse_game {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double dphi_dt(double dp, double dq, double dn, double x) {
  return 0.5 * dp * x * x + dq * x + dn;
}

double dphi2_dt(const CoefficientSample& s, double x) {
  return dphi_dt(s.rate.p2, s.rate.q2, s.rate.n2, x);
}

// Target grid for the brute-force intervention operator.
std::vector<double> target_grid(const QviOptions& opts) {
  const auto cells = static_cast<std::size_t>(
      std::llround(1.0 / std::max(opts.xi_resolution, 1e-9)));
  return uniform_grid(opts.box.lo, opts.box.hi, std::max<std::size_t>(cells, 1));
}

double min_over_targets(const std::vector<double>& ys,
                        const std::vector<double>& v2_at_ys,
                        const GameParams& p, double v2_at_x, double x) {
  double best = v2_at_x + impulse_cost(p, 0.0);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    best = std::min(best, v2_at_ys[i] + impulse_cost(p, ys[i] - x));
  }
  return best;
}

}  // namespace

double hjb1_residual(const CoefficientSample& s, const GameParams& p,
                     double x) {
  const double u = gamma_star(s, p, x);
  const double dphi_dx = s.value.p1 * x + s.value.q1;
  return dphi_dt(s.rate.p1, s.rate.q1, s.rate.n1, x) +
         running_cost_p1(p, x, u) + dphi_dx * (p.a * x + p.b * u);
}

double hjb1_residual(const CoefficientPath& path, const ThresholdPolicy& policy,
                     double t, double x) {
  if (classify(policy.at(t), x) != Region::kInterior) {
    throw RegionError("hjb1_residual: (t, x) outside the continuation set");
  }
  return hjb1_residual(path.at(t), path.params(), x);
}

double qvi_residual(const CoefficientSample& s, const Thresholds& th,
                    const GameParams& p, double x) {
  const double p2 = s.value.p2, q2 = s.value.q2;
  const double dp2 = s.rate.p2, dq2 = s.rate.q2;
  double v_t = 0.0, v_x = 0.0, drift = p.a * x;
  switch (classify(th, x)) {
    case Region::kInterior:
      v_t = dphi2_dt(s, x);
      v_x = p2 * x + q2;
      drift = closed_loop_drift(s, -p.b * p.b / p.r1, x);
      break;
    case Region::kBelow: {
      // d/dt [Phi2(t, alpha(t)) + C + c (alpha(t) - x)]
      const double dalpha = -(dq2 * p2 - (q2 + p.c) * dp2) / (p2 * p2);
      v_t = dphi2_dt(s, th.alpha) + (p2 * th.alpha + q2 + p.c) * dalpha;
      v_x = -p.c;
      break;
    }
    case Region::kAbove: {
      const double dbeta = (-dq2 * p2 - (p.d - q2) * dp2) / (p2 * p2);
      v_t = dphi2_dt(s, th.beta) + (p2 * th.beta + q2 - p.d) * dbeta;
      v_x = p.d;
      break;
    }
  }
  return v_t + running_cost_p2(p, x) + v_x * drift;
}

double intervention_operator(const CoefficientSample& s, const Thresholds& th,
                             const GameParams& p, const QviOptions& opts,
                             double x) {
  const std::vector<double> ys = target_grid(opts);
  std::vector<double> vs(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) vs[i] = value_v2(s, th, p, ys[i]);
  return min_over_targets(ys, vs, p, value_v2(s, th, p, x), x);
}

QviPoint qvi_check(const CoefficientPath& path, const ThresholdPolicy& policy,
                   double t, double x, const QviOptions& opts) {
  const GameParams& p = path.params();
  const CoefficientSample s = path.at(t);
  const Thresholds th = policy.at(t);
  QviPoint q;
  q.region = classify(th, x);
  if (t >= p.T) {
    q.value = terminal_cost_p2(p, x);
    q.intervene = std::numeric_limits<double>::infinity();
    q.gap = -q.intervene;
    return q;
  }
  q.value = value_v2(s, th, p, x);
  q.intervene = intervention_operator(s, th, p, opts, x);
  q.residual = qvi_residual(s, th, p, x);
  q.gap = q.value - q.intervene;
  q.complementarity = q.gap * q.residual;
  return q;
}

Theorem2Point theorem2_conditions(const CoefficientSample& s,
                                  const Thresholds& th, const GameParams& p) {
  Theorem2Point r;
  r.t = s.t;
  r.dphi2_dt_alpha = dphi2_dt(s, th.alpha);
  r.dphi2_dt_beta = dphi2_dt(s, th.beta);
  const double a = p.a, w2 = p.w2, rho2 = p.rho2;
  r.theta_alpha =
      p.c * p.c * a * a + 2.0 * w2 * (p.c * a * rho2 - r.dphi2_dt_alpha);
  r.theta_beta =
      p.d * p.d * a * a - 2.0 * w2 * (p.d * a * rho2 + r.dphi2_dt_beta);

  if (r.theta_alpha >= 0.0) {
    r.x11 = ((p.c * a + w2 * rho2) - std::sqrt(r.theta_alpha)) / w2;
    r.margin_ell1 = r.x11 - th.ell1;
  } else {
    r.alpha_status = RootStatus::kNoRealRoot;
    r.x11 = r.margin_ell1 = kNaN;
  }
  if (r.theta_beta >= 0.0) {
    r.x22 = (-(p.d * a - w2 * rho2) + std::sqrt(r.theta_beta)) / w2;
    r.margin_ell2 = th.ell2 - r.x22;
  } else {
    r.beta_status = RootStatus::kNoRealRoot;
    r.x22 = r.margin_ell2 = kNaN;
  }
  return r;
}

Theorem2Point theorem2_conditions(const CoefficientPath& path,
                                  const ThresholdPolicy& policy, double t) {
  return theorem2_conditions(path.at(t), policy.at(t), path.params());
}

double assumption8_check(const RiccatiConstants& k, const GameParams& params,
                         double t) {
  return convexity_margin(k, params, t);
}

std::pair<double, double> DpOracleResult::continuation_bracket(
    std::size_t layer) const {
  double lo = kNaN, hi = kNaN;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (intervenes(layer, j)) continue;
    if (std::isnan(lo)) lo = xs[j];
    hi = xs[j];
  }
  return {lo, hi};
}

DpOracleResult dp_oracle_v2(const GameParams& p, const CoefficientPath& path,
                            const StateBox& box, std::size_t nt,
                            std::size_t nx) {
  if (nt < 16 || nx < 16) throw std::invalid_argument("dp oracle needs nt, nx >= 16");
  validate(box);
  DpOracleResult out;
  out.times = uniform_grid(0.0, p.T, nt);
  out.xs = uniform_grid(box.lo, box.hi, nx);
  const std::size_t m = out.xs.size();
  const double dt = p.T / static_cast<double>(nt);
  const double dx = box.width() / static_cast<double>(nx);
  out.values.assign((nt + 1) * m, 0.0);
  out.intervene.assign((nt + 1) * m, 0);

  const auto& xs = out.xs;
  // Linear interpolation, extrapolated linearly past the box edges.
  auto interpolate = [&](const double* v, double x) {
    double pos = (x - box.lo) / dx;
    auto j = static_cast<std::ptrdiff_t>(std::floor(pos));
    j = std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(m) - 2);
    const double w = pos - static_cast<double>(j);
    return (1.0 - w) * v[j] + w * v[j + 1];
  };

  double* last = &out.values[nt * m];
  for (std::size_t j = 0; j < m; ++j) last[j] = terminal_cost_p2(p, xs[j]);

  std::vector<double> cont(m);
  std::vector<double> impulse_row(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      impulse_row[i * m + j] = impulse_cost(p, xs[j] - xs[i]);
    }
  }

  for (std::size_t k = nt; k-- > 0;) {
    const double t = out.times[k];
    const CoefficientSample s = path.at(t);
    const double* next = &out.values[(k + 1) * m];
    for (std::size_t j = 0; j < m; ++j) {
      const double x = xs[j];
      const double x_next = x + dt * (p.a * x + p.b * gamma_star(s, p, x));
      cont[j] = interpolate(next, x_next) + dt * running_cost_p2(p, x);
    }
    // Intervening moves to any grid node and then continues from there.
    double* row = &out.values[k * m];
    std::uint8_t* flag = &out.intervene[k * m];
    for (std::size_t i = 0; i < m; ++i) {
      const double* cost = &impulse_row[i * m];
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m; ++j) best = std::min(best, cont[j] + cost[j]);
      flag[i] = best < cont[i] ? 1 : 0;
      row[i] = std::min(best, cont[i]);
    }
  }
  return out;
}

double dp_oracle_discrepancy(const DpOracleResult& oracle,
                             const CoefficientPath& path,
                             const ThresholdPolicy& policy) {
  const Thresholds th = policy.at(0.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < oracle.xs.size(); ++j) {
    const double x = oracle.xs[j];
    if (classify(th, x) != Region::kInterior) continue;
    worst = std::max(worst,
                     std::abs(oracle.value(0, j) - value_v2(path, policy, 0.0, x)));
  }
  return worst;
}

bool VerificationReport::all_pass() const {
  return std::all_of(summary.begin(), summary.end(),
                     [](const ConditionSummary& c) { return c.pass; });
}

const ConditionSummary& VerificationReport::condition(
    const std::string& name) const {
  for (const auto& c : summary) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no condition named " + name);
}

namespace {

// Tracks the worst value of one condition and where it happened.
class Tracker {
 public:
  Tracker(std::string name, bool maximize, double threshold)
      : maximize_(maximize) {
    c_.name = std::move(name);
    c_.threshold = threshold;
    c_.worst = maximize ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  }

  void observe(double value, double t, double x) {
    if (std::isnan(value)) {
      ++c_.inapplicable;
      return;
    }
    seen_ = true;
    if (maximize_ ? value > c_.worst : value < c_.worst) {
      c_.worst = value;
      c_.t = t;
      c_.x = x;
    }
  }

  // pass iff worst <= threshold (maximize) or worst >= threshold (minimize);
  // `strict` turns these into < and >.
  ConditionSummary finish(bool strict = false) {
    if (!seen_) {
      c_.worst = kNaN;
      c_.pass = true;
      return c_;
    }
    if (maximize_) {
      c_.pass = strict ? c_.worst < c_.threshold : c_.worst <= c_.threshold;
    } else {
      c_.pass = strict ? c_.worst > c_.threshold : c_.worst >= c_.threshold;
    }
    return c_;
  }

 private:
  bool maximize_;
  bool seen_ = false;
  ConditionSummary c_;
};

}  // namespace

VerificationReport verify_equilibrium(const CoefficientPath& path,
                                      const ThresholdPolicy& policy,
                                      const StateBox& box,
                                      const VerifyOptions& options) {
  validate(box);
  if (options.nt < 2 || options.nx < 2) {
    throw std::invalid_argument("verification grid needs at least 2x2 nodes");
  }
  const GameParams& p = path.params();
  VerificationReport report;
  report.box = box;
  report.options = options;
  const QviOptions qopts{box, options.xi_resolution};
  const std::vector<double> ys = target_grid(qopts);
  report.xi_tolerance = (ys[1] - ys[0]) * (p.c + p.d);

  const std::vector<double> ts = uniform_grid(0.0, p.T, options.nt - 1);
  const std::vector<double> xs = uniform_grid(box.lo, box.hi, options.nx - 1);
  report.nodes.reserve(ts.size() * xs.size());
  std::vector<double> v_ys(ys.size());

  for (double t : ts) {
    const CoefficientSample s = path.at(t);
    const Thresholds th = policy.at(t);
    for (std::size_t i = 0; i < ys.size(); ++i) v_ys[i] = value_v2(s, th, p, ys[i]);

    TimeRecord tr;
    tr.t = t;
    tr.p2 = s.value.p2;
    tr.thresholds = th;
    tr.theorem2 = theorem2_conditions(s, th, p);
    tr.convexity_margin = assumption8_check(path.constants(), p, t);
    report.times.push_back(tr);

    for (double x : xs) {
      NodeRecord n;
      n.t = t;
      n.x = x;
      n.region = classify(th, x);
      n.hjb1_residual = n.region == Region::kInterior ? hjb1_residual(s, p, x) : kNaN;
      n.qvi_residual = qvi_residual(s, th, p, x);
      const double v = value_v2(s, th, p, x);
      n.gap = v - min_over_targets(ys, v_ys, p, v, x);
      n.complementarity = n.gap * n.qvi_residual;
      report.nodes.push_back(n);
    }
  }

  double max_abs_gap = 0.0, max_abs_res = 0.0;
  for (const auto& n : report.nodes) {
    max_abs_gap = std::max(max_abs_gap, std::abs(n.gap));
    max_abs_res = std::max(max_abs_res, std::abs(n.qvi_residual));
  }
  const double gap_tol = options.gap_tol + report.xi_tolerance;
  const double comp_tol =
      max_abs_gap * options.residual_tol + max_abs_res * report.xi_tolerance;

  Tracker hjb1("hjb1_residual", true, options.residual_tol);
  Tracker qvi_ineq("qvi_inequality", false, -options.residual_tol);
  Tracker qvi_eq("qvi_continuation_equality", true, options.residual_tol);
  Tracker obstacle("qvi_obstacle", true, gap_tol);
  Tracker int_eq("qvi_intervention_equality", true, gap_tol);
  Tracker cont_gap("qvi_continuation_gap", true, 0.0);
  Tracker comp("qvi_complementarity", true, comp_tol);
  for (const auto& n : report.nodes) {
    const bool inside = n.region == Region::kInterior;
    hjb1.observe(inside ? std::abs(n.hjb1_residual) : kNaN, n.t, n.x);
    qvi_ineq.observe(n.qvi_residual, n.t, n.x);
    qvi_eq.observe(inside ? std::abs(n.qvi_residual) : kNaN, n.t, n.x);
    obstacle.observe(n.gap, n.t, n.x);
    int_eq.observe(inside ? kNaN : std::abs(n.gap), n.t, n.x);
    cont_gap.observe(inside ? n.gap : kNaN, n.t, n.x);
    comp.observe(std::abs(n.complementarity), n.t, n.x);
  }
  // Only interior nodes count for these; exterior ones are not "inapplicable".
  auto finish_region = [](Tracker& tr, bool strict = false) {
    ConditionSummary c = tr.finish(strict);
    c.inapplicable = 0;
    return c;
  };

  Tracker th_ell1("ell1_root_margin", false, 0.0);
  Tracker th_ell2("ell2_root_margin", false, 0.0);
  Tracker a8("convexity_margin", false, 0.0);
  std::size_t sign_mismatch = 0;
  for (const auto& tr : report.times) {
    th_ell1.observe(tr.theorem2.margin_ell1, tr.t, tr.thresholds.ell1);
    th_ell2.observe(tr.theorem2.margin_ell2, tr.t, tr.thresholds.ell2);
    a8.observe(tr.convexity_margin, tr.t, 0.0);
    if ((tr.convexity_margin > 0.0) != (tr.p2 > 0.0)) ++sign_mismatch;
  }

  report.summary.push_back(finish_region(hjb1));
  report.summary.push_back(qvi_ineq.finish());
  report.summary.push_back(finish_region(qvi_eq));
  report.summary.push_back(obstacle.finish());
  report.summary.push_back(finish_region(int_eq));
  report.summary.push_back(finish_region(cont_gap, true));
  report.summary.push_back(comp.finish());
  report.summary.push_back(th_ell1.finish());
  report.summary.push_back(th_ell2.finish());
  ConditionSummary a8s = a8.finish(true);
  if (sign_mismatch > 0) a8s.pass = false;
  report.summary.push_back(a8s);
  return report;
}

}  // namespace impulse_game
