#include <gtest/gtest.h>

#include <cmath>

#include "impulse_game/errors.hpp"
#include "impulse_game/verify.hpp"
#include "support/fixtures.hpp"

namespace impulse_game {
namespace {

using testing::baseline;
using testing::baseline_w2_1;
using testing::unit_box;

struct Solved {
  GameParams params;
  CoefficientPath path;
  ThresholdPolicy policy;
};

Solved solved(const GameParams& p, std::size_t n = 4096) {
  CoefficientPath path = solve_backward(p, riccati_constants(p), n);
  ThresholdPolicy policy = build_policy(path, p);
  return {p, std::move(path), std::move(policy)};
}

const Solved& baseline_solution() {
  static const Solved s = solved(baseline());
  return s;
}

TEST(Hjb1, InteriorGridResidualSmall) {
  const Solved& s = baseline_solution();
  double worst = 0.0;
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const double t = s.params.T * i / 20.0;
    const Thresholds th = s.policy.at(t);
    for (int j = 1; j <= 20; ++j) {
      const double x = th.ell1 + (th.ell2 - th.ell1) * j / 21.0;
      worst = std::max(worst, std::abs(hjb1_residual(s.path, s.policy, t, x)));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 400);
  EXPECT_LT(worst, 1e-6);
}

TEST(Hjb1, ContinuousTowardsHorizon) {
  const Solved& s = baseline_solution();
  const double x = 5.0;
  const double near = hjb1_residual(s.path, s.policy, s.params.T - 1e-9, x);
  const double at = hjb1_residual(s.path.node(s.path.size() - 1), s.params, x);
  EXPECT_NEAR(near, at, 1e-6);
}

TEST(Hjb1, PerturbedP1IsDetected) {
  const Solved& s = baseline_solution();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    CoefficientSample c = s.path.at(s.params.T * i / 20.0);
    c.value.p1 += 1e-3;
    for (double x = 3.5; x < 7.0; x += 0.25) {
      worst = std::max(worst, std::abs(hjb1_residual(c, s.params, x)));
    }
  }
  EXPECT_GT(worst, 1e-4);
}

TEST(Hjb1, OutsideContinuationThrows) {
  const Solved& s = baseline_solution();
  EXPECT_THROW(hjb1_residual(s.path, s.policy, 0.0, 1.0), RegionError);
  EXPECT_THROW(hjb1_residual(s.path, s.policy, 0.0, 9.0), RegionError);
}

TEST(Qvi, InteriorNode) {
  const Solved& s = baseline_solution();
  const QviPoint q = qvi_check(s.path, s.policy, 0.5, 5.0, {unit_box()});
  EXPECT_EQ(q.region, Region::kInterior);
  EXPECT_LT(q.gap, 0.0);
  EXPECT_LT(std::abs(q.residual), 1e-5);
  EXPECT_DOUBLE_EQ(q.complementarity, q.gap * q.residual);
}

TEST(Qvi, ExteriorNode) {
  const Solved& s = baseline_solution();
  const GameParams& p = s.params;
  const QviOptions opts{unit_box()};
  const double x = s.policy.at(0.5).ell2 + 1.0;
  const QviPoint q = qvi_check(s.path, s.policy, 0.5, x, opts);
  EXPECT_EQ(q.region, Region::kAbove);
  EXPECT_LT(std::abs(q.gap), opts.xi_resolution * unit_box().width() * (p.c + p.d));
  EXPECT_GE(q.residual, -1e-5);
}

TEST(Qvi, TerminalValue) {
  const Solved& s = baseline_solution();
  for (double x : {0.5, 5.0, 9.5}) {
    const QviPoint q = qvi_check(s.path, s.policy, s.params.T, x, {unit_box()});
    EXPECT_EQ(q.value, terminal_cost_p2(s.params, x));
  }
}

TEST(ExteriorRoots, MarginsNonNegativeAtEveryNode) {
  for (const GameParams& p : {baseline(), baseline_w2_1()}) {
    const Solved s = solved(p, 1024);
    std::size_t with_roots = 0;
    for (std::size_t k = 0; k < s.path.size(); ++k) {
      const Theorem2Point q = theorem2_conditions(s.path.node(k), s.policy.node(k), p);
      if (q.alpha_status == RootStatus::kRoots) {
        EXPECT_GE(q.margin_ell1, 0.0) << k;
        ++with_roots;
      } else {
        EXPECT_LT(q.theta_alpha, 0.0);
        EXPECT_TRUE(std::isnan(q.x11));
      }
      if (q.beta_status == RootStatus::kRoots) {
        EXPECT_GE(q.margin_ell2, 0.0) << k;
        ++with_roots;
      } else {
        EXPECT_LT(q.theta_beta, 0.0);
        EXPECT_TRUE(std::isnan(q.x22));
      }
    }
    EXPECT_GT(with_roots, s.path.size());
  }
}

TEST(ExteriorRoots, RootsSolveExteriorResidual) {
  // At x11 the below-branch residual vanishes; at x22 the above-branch one does.
  const Solved& s = baseline_solution();
  const GameParams& p = s.params;
  for (double t : {0.0, 0.4}) {
    const CoefficientSample c = s.path.at(t);
    const Thresholds th = s.policy.at(t);
    const Theorem2Point q = theorem2_conditions(c, th, p);
    ASSERT_EQ(q.alpha_status, RootStatus::kRoots);
    auto below = [&](double x) {
      return q.dphi2_dt_alpha + 0.5 * p.w2 * (x - p.rho2) * (x - p.rho2) - p.c * p.a * x;
    };
    EXPECT_NEAR(below(q.x11), 0.0, 1e-9);
    if (q.beta_status == RootStatus::kRoots) {
      auto above = [&](double x) {
        return q.dphi2_dt_beta + 0.5 * p.w2 * (x - p.rho2) * (x - p.rho2) + p.d * p.a * x;
      };
      EXPECT_NEAR(above(q.x22), 0.0, 1e-9);
    }
  }
}

TEST(ExteriorRoots, ZeroDriftCollapse) {
  GameParams p = baseline();
  p.a = 0.0;
  const Solved s = solved(p, 512);
  for (std::size_t k = 0; k < s.path.size(); k += 64) {
    const Theorem2Point q = theorem2_conditions(s.path.node(k), s.policy.node(k), p);
    EXPECT_NEAR(q.theta_alpha, -2 * p.w2 * q.dphi2_dt_alpha, 1e-12);
    if (q.alpha_status == RootStatus::kRoots) {
      EXPECT_NEAR(q.x11, p.rho2 - std::sqrt(q.theta_alpha) / p.w2, 1e-12);
    }
  }
}

TEST(ExteriorRoots, SmallFixedCostsReported) {
  GameParams p = baseline();
  p.C = p.D = 1e-4;
  const Solved s = solved(p, 512);
  const VerificationReport r = verify_equilibrium(s.path, s.policy, unit_box(), {40, 40});
  EXPECT_FALSE(r.all_pass());
  EXPECT_FALSE(r.condition("ell1_root_margin").pass && r.condition("ell2_root_margin").pass);
}

TEST(ConvexityMargin, PositiveAndAgreesWithP2) {
  const Solved& s = baseline_solution();
  const RiccatiConstants& k = s.path.constants();
  for (double t : {0.0, 0.5, 1.0}) {
    const double m = assumption8_check(k, s.params, t);
    EXPECT_GT(m, 0.0);
    EXPECT_EQ(m > 0.0, p2_closed_form(k, s.params, t) > 0.0);
  }
  EXPECT_EQ(s.path.node(s.path.size() - 1).value.p2, s.params.s2);
}

TEST(ConvexityMargin, LinearInRunningWeightForFixedConstants) {
  const GameParams p = baseline();
  const RiccatiConstants k = riccati_constants(p);
  GameParams q = p;
  q.w2 = 2 * p.w2;
  const double t = 0.3;
  const double w_term = [&](const GameParams& g) {
    return assumption8_check(k, g, t) - k.h_const * k.theta;
  }(p);
  const double w_term2 = assumption8_check(k, q, t) - k.h_const * k.theta;
  EXPECT_NEAR(w_term2, 2 * w_term, 1e-12);
}

TEST(DpOracle, AgreesWithValueFunction) {
  const Solved& s = baseline_solution();
  const DpOracleResult o = dp_oracle_v2(s.params, s.path, unit_box(), 200, 200);
  EXPECT_EQ(o.times.size(), 201u);
  EXPECT_EQ(o.xs.size(), 201u);
  EXPECT_LT(dp_oracle_discrepancy(o, s.path, s.policy), 5e-2);
}

TEST(DpOracle, BracketsThresholds) {
  const Solved& s = baseline_solution();
  const DpOracleResult o = dp_oracle_v2(s.params, s.path, unit_box(), 200, 200);
  const double dx = unit_box().width() / 200;
  const auto [lo, hi] = o.continuation_bracket(0);
  EXPECT_NEAR(lo, 3.3822, 2 * dx);
  EXPECT_NEAR(hi, 7.0305, 2 * dx);
}

TEST(DpOracle, FirstOrderConvergence) {
  const Solved& s = baseline_solution();
  const double e1 = dp_oracle_discrepancy(
      dp_oracle_v2(s.params, s.path, unit_box(), 100, 100), s.path, s.policy);
  const double e2 = dp_oracle_discrepancy(
      dp_oracle_v2(s.params, s.path, unit_box(), 200, 200), s.path, s.policy);
  // Observed order 1; the ratio sits just above 1/2 from the O(h^2) remainder.
  EXPECT_LT(e2 / e1, 0.55);
  EXPECT_GT(e2 / e1, 0.45);
}

TEST(DpOracle, NeverIntervenesWithoutRunningCost) {
  GameParams p = baseline();
  p.w2 = 0.0;
  p.s2 = 1e-6;
  const CoefficientPath path = solve_backward(p, riccati_constants(p), 256);
  const DpOracleResult o = dp_oracle_v2(p, path, unit_box(), 32, 32);
  for (auto flag : o.intervene) EXPECT_EQ(flag, 0);
}

TEST(DpOracle, RejectsCoarseGrid) {
  const Solved& s = baseline_solution();
  EXPECT_THROW(dp_oracle_v2(s.params, s.path, unit_box(), 8, 200), std::invalid_argument);
}

TEST(VerifyEquilibrium, BaselinePasses) {
  for (const GameParams& p : {baseline(), baseline_w2_1()}) {
    const Solved s = solved(p);
    const VerificationReport r = verify_equilibrium(s.path, s.policy, unit_box());
    EXPECT_EQ(r.nodes.size(), 200u * 200u);
    EXPECT_EQ(r.times.size(), 200u);
    for (const ConditionSummary& c : r.summary) EXPECT_TRUE(c.pass) << c.name << " " << c.worst;
    EXPECT_TRUE(r.all_pass());
  }
}

TEST(VerifyEquilibrium, SummaryRecomputableFromNodes) {
  const Solved& s = baseline_solution();
  const VerificationReport r = verify_equilibrium(s.path, s.policy, unit_box(), {50, 50});
  double worst_hjb = 0.0, min_res = 1e300, max_gap = -1e300;
  for (const NodeRecord& n : r.nodes) {
    if (n.region == Region::kInterior) worst_hjb = std::max(worst_hjb, std::abs(n.hjb1_residual));
    else EXPECT_TRUE(std::isnan(n.hjb1_residual));
    min_res = std::min(min_res, n.qvi_residual);
    max_gap = std::max(max_gap, n.gap);
  }
  EXPECT_EQ(r.condition("hjb1_residual").worst, worst_hjb);
  EXPECT_EQ(r.condition("qvi_inequality").worst, min_res);
  EXPECT_EQ(r.condition("qvi_obstacle").worst, max_gap);
  EXPECT_EQ(r.condition("qvi_inequality").pass, min_res >= -r.options.residual_tol);
  EXPECT_THROW(r.condition("nonexistent"), std::out_of_range);
}

TEST(VerifyEquilibrium, Deterministic) {
  const Solved& s = baseline_solution();
  const VerificationReport a = verify_equilibrium(s.path, s.policy, unit_box(), {30, 30});
  const VerificationReport b = verify_equilibrium(s.path, s.policy, unit_box(), {30, 30});
  ASSERT_EQ(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    EXPECT_EQ(a.nodes[i].gap, b.nodes[i].gap);
    EXPECT_EQ(a.nodes[i].qvi_residual, b.nodes[i].qvi_residual);
  }
}

}  // namespace
}  // namespace impulse_game
