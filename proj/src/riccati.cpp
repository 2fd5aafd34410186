#include "impulse_game/riccati.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "impulse_game/errors.hpp"

namespace impulse_game {

RiccatiConstants riccati_constants(const GameParams& p) {
  if (p.b == 0.0) {
    throw DegenerateParameter("b = 0 leaves player 1 without control");
  }
  RiccatiConstants k;
  const double gain = p.b * p.b / p.r1;
  k.b_x = -gain;
  k.theta = 2.0 * std::sqrt(p.a * p.a + p.w1 * gain);
  assert(std::abs(k.theta - 2.0 * std::sqrt(p.a * p.a - p.w1 * k.b_x)) <=
         1e-14 * k.theta);

  const double denom = k.theta + 2.0 * gain * p.s1 - 2.0 * p.a;
  if (denom == 0.0) {
    throw DegenerateParameter("theta + 2 (b^2/r1) s1 - 2a = 0");
  }
  const double th = k.theta, T = p.T;
  k.c1 = (2.0 * th / denom - 1.0) * std::exp(-th * T);

  const double c1 = k.c1;
  k.h_const = 2.0 * c1 * p.s2 + p.s2 * std::exp(-T * th) -
              (p.w2 * std::exp(-T * th) - c1 * c1 * p.w2 * std::exp(T * th)) /
                  th +
              c1 * c1 * p.s2 * std::exp(T * th) + 2.0 * c1 * T * p.w2;
  return k;
}

namespace {

double exp_factor(const RiccatiConstants& k, double t) {
  const double e = k.c1 * std::exp(k.theta * t) + 1.0;
  if (e == 0.0) throw DegenerateParameter("C1 e^{theta t} + 1 = 0");
  return e;
}

}  // namespace

double a_x(const RiccatiConstants& k, double t) {
  return 0.5 * k.theta - k.theta / exp_factor(k, t);
}

double p1_closed_form(const RiccatiConstants& k, const GameParams& p,
                      double t) {
  return (-p.a + a_x(k, t)) / k.b_x;
}

double p2_closed_form(const RiccatiConstants& k, const GameParams& p,
                      double t) {
  const double e = exp_factor(k, t);
  const double et = std::exp(t * k.theta);
  const double th = k.theta, c1 = k.c1;
  const double num = -p.w2 * et * et * c1 * c1 - 2.0 * t * th * p.w2 * et * c1 +
                     p.w2 + k.h_const * th * et;
  return num / (th * e * e);
}

double convexity_margin(const RiccatiConstants& k, const GameParams& p,
                        double t) {
  const double et = std::exp(t * k.theta);
  return k.h_const * k.theta +
         p.w2 * (1.0 - et * k.c1 * k.c1 - 2.0 * t * k.theta * k.c1);
}

CoefficientValues coefficient_rates(const GameParams& p,
                                    const RiccatiConstants& k, double t,
                                    const CoefficientValues& v) {
  const double ax = a_x(k, t);
  const double bx = k.b_x;
  CoefficientValues r;
  r.p1 = -p.w1 - bx * v.p1 * v.p1 - 2.0 * p.a * v.p1;
  r.q1 = -ax * v.q1 + p.w1 * p.rho1;
  r.n1 = -0.5 * bx * v.q1 * v.q1 - 0.5 * p.w1 * p.rho1 * p.rho1;
  r.p2 = -p.w2 - 2.0 * v.p2 * ax;
  r.q2 = -ax * v.q2 - bx * v.p2 * v.q1 + p.w2 * p.rho2;
  r.n2 = -bx * v.q1 * v.q2 - 0.5 * p.w2 * p.rho2 * p.rho2;
  return r;
}

CoefficientPath::CoefficientPath(GameParams params, RiccatiConstants constants,
                                 std::vector<double> times, HermiteSeries q1,
                                 HermiteSeries n1, HermiteSeries q2,
                                 HermiteSeries n2)
    : params_(params),
      constants_(constants),
      times_(std::move(times)),
      q1_(std::move(q1)),
      n1_(std::move(n1)),
      q2_(std::move(q2)),
      n2_(std::move(n2)) {}

// The closed forms reproduce the terminal values only up to rounding; pin them.
double CoefficientPath::closed_p1(double t) const {
  return t >= params_.T ? params_.s1 : p1_closed_form(constants_, params_, t);
}

double CoefficientPath::closed_p2(double t) const {
  return t >= params_.T ? params_.s2 : p2_closed_form(constants_, params_, t);
}

CoefficientSample CoefficientPath::node(std::size_t k) const {
  CoefficientSample s;
  s.t = times_.at(k);
  s.value.p1 = closed_p1(s.t);
  s.value.p2 = closed_p2(s.t);
  s.value.q1 = q1_.values()[k];
  s.value.n1 = n1_.values()[k];
  s.value.q2 = q2_.values()[k];
  s.value.n2 = n2_.values()[k];
  s.rate = coefficient_rates(params_, constants_, s.t, s.value);
  s.a_x = a_x(constants_, s.t);
  return s;
}

CoefficientSample CoefficientPath::at(double t) const {
  CoefficientSample s;
  s.t = t;
  s.value.p1 = closed_p1(t);
  s.value.p2 = closed_p2(t);
  const auto q1 = q1_(t), n1 = n1_(t), q2 = q2_(t), n2 = n2_(t);
  s.value.q1 = q1.value;
  s.value.n1 = n1.value;
  s.value.q2 = q2.value;
  s.value.n2 = n2.value;
  // p1, p2 are exact, so their rates come straight from the ODEs; the others
  // are the derivative of the interpolant.
  const CoefficientValues exact = coefficient_rates(params_, constants_, t, s.value);
  s.rate.p1 = exact.p1;
  s.rate.p2 = exact.p2;
  s.rate.q1 = q1.slope;
  s.rate.n1 = n1.slope;
  s.rate.q2 = q2.slope;
  s.rate.n2 = n2.slope;
  s.a_x = a_x(constants_, t);
  return s;
}

CoefficientPath solve_backward(const GameParams& p, const RiccatiConstants& k,
                               std::size_t n_steps) {
  if (n_steps < 2) throw std::invalid_argument("n_steps must be >= 2");
  const std::size_t n = n_steps + 1;
  std::vector<double> times = uniform_grid(0.0, p.T, n_steps);
  const double h = p.T / static_cast<double>(n_steps);

  // State (q1, n1, q2, n2); p2 enters through its closed form.
  using State = std::array<double, 4>;
  auto rhs = [&](double t, const State& y) {
    CoefficientValues v;
    v.q1 = y[0];
    v.n1 = y[1];
    v.q2 = y[2];
    v.n2 = y[3];
    v.p2 = p2_closed_form(k, p, t);
    const CoefficientValues r = coefficient_rates(p, k, t, v);
    return State{r.q1, r.n1, r.q2, r.n2};
  };
  auto axpy = [](const State& y, double s, const State& dy) {
    return State{y[0] + s * dy[0], y[1] + s * dy[1], y[2] + s * dy[2],
                 y[3] + s * dy[3]};
  };

  std::vector<State> ys(n);
  ys[n - 1] = {-p.s1 * p.rho1, 0.5 * p.s1 * p.rho1 * p.rho1, -p.s2 * p.rho2,
               0.5 * p.s2 * p.rho2 * p.rho2};
  for (std::size_t i = n - 1; i > 0; --i) {
    const double t = times[i];
    const State& y = ys[i];
    const double dt = -h;
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const State k3 = rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const State k4 = rhs(t + dt, axpy(y, dt, k3));
    State next;
    for (std::size_t j = 0; j < 4; ++j) {
      next[j] = y[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(next[j])) throw NonFinite(i - 1, "coefficient");
    }
    ys[i - 1] = next;
  }

  std::array<std::vector<double>, 4> values, slopes;
  for (auto& v : values) v.resize(n);
  for (auto& v : slopes) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State r = rhs(times[i], ys[i]);
    const double p1 = p1_closed_form(k, p, times[i]);
    const double p2 = p2_closed_form(k, p, times[i]);
    if (!std::isfinite(p1) || !std::isfinite(p2) || !std::isfinite(r[0]) ||
        !std::isfinite(r[1]) || !std::isfinite(r[2]) || !std::isfinite(r[3])) {
      throw NonFinite(i, "coefficient");
    }
    for (std::size_t j = 0; j < 4; ++j) {
      values[j][i] = ys[i][j];
      slopes[j][i] = r[j];
    }
  }
  return CoefficientPath(
      p, k, std::move(times),
      HermiteSeries(0.0, p.T, std::move(values[0]), std::move(slopes[0])),
      HermiteSeries(0.0, p.T, std::move(values[1]), std::move(slopes[1])),
      HermiteSeries(0.0, p.T, std::move(values[2]), std::move(slopes[2])),
      HermiteSeries(0.0, p.T, std::move(values[3]), std::move(slopes[3])));
}

}  // namespace impulse_game
