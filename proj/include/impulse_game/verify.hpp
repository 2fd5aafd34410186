// Numerical certification of the computed equilibrium: HJB residual of
// player 1, the three quasi-variational inequalities of player 2, the
// sufficient boundary conditions on ell1/ell2, p2 convexity, and an
// independent backward-induction oracle for player 2's best response.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "impulse_game/model.hpp"
#include "impulse_game/policy.hpp"
#include "impulse_game/riccati.hpp"

namespace impulse_game {

// dPhi1/dt + 1/2 w1 (x - rho1)^2 + 1/2 r1 u*^2 + dPhi1/dx (a x + b u*).
double hjb1_residual(const CoefficientSample& s, const GameParams& params,
                     double x);
// Throws RegionError outside the continuation set.
double hjb1_residual(const CoefficientPath& path, const ThresholdPolicy& policy,
                     double t, double x);

struct QviOptions {
  StateBox box;
  double xi_resolution = 1e-3;  // fraction of the box width
};

struct QviPoint {
  Region region = Region::kInterior;
  double value = 0.0;       // V2(t, x)
  double intervene = 0.0;   // brute-force R V2(t, x)
  double residual = 0.0;    // dV2/dt + 1/2 w2 (x - rho2)^2 + dV2/dx * drift
  double gap = 0.0;         // V2 - R V2
  double complementarity = 0.0;
};

// Residual of the HJB-type inequality using the analytic branch derivatives.
double qvi_residual(const CoefficientSample& s, const Thresholds& th,
                    const GameParams& params, double x);

// min over the target grid (plus a zero impulse) of V2(t, y) + h(y - x).
double intervention_operator(const CoefficientSample& s, const Thresholds& th,
                             const GameParams& params, const QviOptions& opts,
                             double x);

// At t >= T no impulse is admissible: value is the terminal cost, intervene is
// +inf and residual, complementarity are zero.
QviPoint qvi_check(const CoefficientPath& path, const ThresholdPolicy& policy,
                   double t, double x, const QviOptions& opts);

enum class RootStatus { kRoots, kNoRealRoot };

struct Theorem2Point {
  double t = 0.0;
  double dphi2_dt_alpha = 0.0;
  double dphi2_dt_beta = 0.0;
  double theta_alpha = 0.0;
  double theta_beta = 0.0;
  RootStatus alpha_status = RootStatus::kRoots;
  RootStatus beta_status = RootStatus::kRoots;
  double x11 = 0.0;  // NaN when theta_alpha < 0
  double x22 = 0.0;  // NaN when theta_beta < 0
  double margin_ell1 = 0.0;  // x11 - ell1
  double margin_ell2 = 0.0;  // ell2 - x22
};

// A negative discriminant means the exterior residual quadratic has no real
// root and is positive everywhere, so the inequality holds on that side.
Theorem2Point theorem2_conditions(const CoefficientSample& s,
                                  const Thresholds& th,
                                  const GameParams& params);
Theorem2Point theorem2_conditions(const CoefficientPath& path,
                                  const ThresholdPolicy& policy, double t);

double assumption8_check(const RiccatiConstants& k, const GameParams& params,
                         double t);

struct DpOracleResult {
  std::vector<double> times;  // nt + 1 layers
  std::vector<double> xs;     // nx + 1 nodes
  std::vector<double> values;             // row-major [layer][node]
  std::vector<std::uint8_t> intervene;    // same layout

  double value(std::size_t layer, std::size_t j) const {
    return values[layer * xs.size() + j];
  }
  bool intervenes(std::size_t layer, std::size_t j) const {
    return intervene[layer * xs.size() + j] != 0;
  }
  // Lowest and highest grid node where the oracle waits at `layer`.
  std::pair<double, double> continuation_bracket(std::size_t layer) const;
};

// Semi-Lagrangian backward induction for player 2 against u*; requires
// nt, nx >= 16.
DpOracleResult dp_oracle_v2(const GameParams& params,
                            const CoefficientPath& path, const StateBox& box,
                            std::size_t nt, std::size_t nx);

// max |oracle(t=0) - V2(0, x)| over grid nodes strictly inside (ell1, ell2).
double dp_oracle_discrepancy(const DpOracleResult& oracle,
                             const CoefficientPath& path,
                             const ThresholdPolicy& policy);

struct VerifyOptions {
  std::size_t nt = 200;
  std::size_t nx = 200;
  double residual_tol = 1e-5;
  double gap_tol = 1e-6;
  double xi_resolution = 1e-3;
};

struct NodeRecord {
  double t = 0.0;
  double x = 0.0;
  Region region = Region::kInterior;
  double hjb1_residual = 0.0;  // NaN outside the continuation set
  double qvi_residual = 0.0;
  double gap = 0.0;
  double complementarity = 0.0;
};

struct TimeRecord {
  double t = 0.0;
  double p2 = 0.0;
  Thresholds thresholds;
  Theorem2Point theorem2;
  double convexity_margin = 0.0;
};

struct ConditionSummary {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double threshold = 0.0;
  double t = 0.0;
  double x = 0.0;
  std::size_t inapplicable = 0;  // nodes skipped (no real root)
};

struct VerificationReport {
  StateBox box;
  VerifyOptions options;
  double xi_tolerance = 0.0;  // xi grid spacing * (c + d)
  std::vector<NodeRecord> nodes;  // t-major
  std::vector<TimeRecord> times;
  std::vector<ConditionSummary> summary;

  bool all_pass() const;
  const ConditionSummary& condition(const std::string& name) const;
};

VerificationReport verify_equilibrium(const CoefficientPath& path,
                                      const ThresholdPolicy& policy,
                                      const StateBox& box,
                                      const VerifyOptions& options = {});

}  // namespace impulse_game
