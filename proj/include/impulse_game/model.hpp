// Parameters and cost primitives of the scalar linear-quadratic game with
// one continuously controlling player and one impulse player.
//
//   J1 = int 1/2 (w1 (x - rho1)^2 + r1 u^2) dt + sum z1 |xi_i| + 1/2 s1 (x(T) - rho1)^2
//   J2 = int 1/2 w2 (x - rho2)^2 dt + sum h(xi_i) + 1/2 s2 (x(T) - rho2)^2
//   dx/dt = a x + b u between impulses, x(tau+) = x(tau-) + xi.

#pragma once

namespace impulse_game {

struct GameParams {
  double a = 0.0;
  double b = 0.0;
  double w1 = 0.0;
  double r1 = 0.0;
  double z1 = 0.0;
  double s1 = 0.0;
  double rho1 = 0.0;
  double w2 = 0.0;
  double s2 = 0.0;
  double rho2 = 0.0;
  double C = 0.0;  // fixed cost, upward impulse
  double D = 0.0;  // fixed cost, downward impulse
  double c = 0.0;  // marginal cost, upward impulse
  double d = 0.0;  // marginal cost, downward impulse
  double T = 0.0;
};

// Compact state interval used for sup-norm bounds and verification grids.
struct StateBox {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
};

// Throws InvalidParameters naming every violated field.
GameParams validate(const GameParams& params);
StateBox validate(const StateBox& box);

// Player 2's intervention cost h(xi).
double impulse_cost(const GameParams& params, double xi);

// z1 |xi|.
double player1_impulse_cost(const GameParams& params, double xi);

// inf_xi h(xi) = min(C, D).
double min_intervention_cost(const GameParams& params);

double running_cost_p1(const GameParams& params, double x, double u);
double running_cost_p2(const GameParams& params, double x);
double terminal_cost_p1(const GameParams& params, double x);
double terminal_cost_p2(const GameParams& params, double x);

}  // namespace impulse_game
