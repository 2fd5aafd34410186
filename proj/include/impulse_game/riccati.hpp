// Coefficients of the quadratic value-function ansatz
//
//   Phi_i(t, x) = 1/2 p_i(t) x^2 + q_i(t) x + n_i(t),   i = 1, 2.
//
// p1 and p2 have closed forms; q1, n1, q2, n2 are integrated backward from
// their terminal conditions with classical RK4 on a uniform grid.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "impulse_game/interpolation.hpp"
#include "impulse_game/model.hpp"

namespace impulse_game {

struct RiccatiConstants {
  double theta = 0.0;    // 2 sqrt(a^2 + w1 b^2 / r1)
  double c1 = 0.0;       // integration constant of the p1 solution
  double h_const = 0.0;  // integration constant of the p2 solution
  double b_x = 0.0;      // -b^2 / r1
};

// Throws DegenerateParameter if b == 0 or the C1 denominator vanishes.
RiccatiConstants riccati_constants(const GameParams& params);

double p1_closed_form(const RiccatiConstants& k, const GameParams& params,
                      double t);
double p2_closed_form(const RiccatiConstants& k, const GameParams& params,
                      double t);

// Closed-loop drift coefficient a + b_x p1(t).
double a_x(const RiccatiConstants& k, double t);

// Left-hand side of the p2-positivity condition
//   H theta + w2 (1 - e^{t theta} C1^2 - 2 t theta C1).
double convexity_margin(const RiccatiConstants& k, const GameParams& params,
                        double t);

// Time derivatives of all six coefficients given their current values.
struct CoefficientValues {
  double p1 = 0.0, q1 = 0.0, n1 = 0.0;
  double p2 = 0.0, q2 = 0.0, n2 = 0.0;
};

CoefficientValues coefficient_rates(const GameParams& params,
                                    const RiccatiConstants& k, double t,
                                    const CoefficientValues& v);

// Values, time derivatives and the closed-loop coefficient at one instant.
struct CoefficientSample {
  double t = 0.0;
  CoefficientValues value;
  CoefficientValues rate;
  double a_x = 0.0;
};

class CoefficientPath {
 public:
  CoefficientPath(GameParams params, RiccatiConstants constants,
                  std::vector<double> times, HermiteSeries q1,
                  HermiteSeries n1, HermiteSeries q2, HermiteSeries n2);

  const GameParams& params() const { return params_; }
  const RiccatiConstants& constants() const { return constants_; }
  std::span<const double> times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double horizon() const { return params_.T; }

  CoefficientSample node(std::size_t k) const;
  // Closed forms for p1, p2, a_x; Hermite interpolation for the rest.
  CoefficientSample at(double t) const;

 private:
  double closed_p1(double t) const;
  double closed_p2(double t) const;

  GameParams params_;
  RiccatiConstants constants_;
  std::vector<double> times_;
  HermiteSeries q1_, n1_, q2_, n2_;
};

inline constexpr std::size_t kDefaultRiccatiSteps = 4096;

// n_steps >= 2. Throws NonFinite with the offending node index.
CoefficientPath solve_backward(const GameParams& params,
                               const RiccatiConstants& constants,
                               std::size_t n_steps = kDefaultRiccatiSteps);

inline double phi(double p, double q, double n, double x) {
  return 0.5 * p * x * x + q * x + n;
}

inline double phi1(const CoefficientSample& s, double x) {
  return phi(s.value.p1, s.value.q1, s.value.n1, x);
}

inline double phi2(const CoefficientSample& s, double x) {
  return phi(s.value.p2, s.value.q2, s.value.n2, x);
}

}  // namespace impulse_game
