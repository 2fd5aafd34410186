#pragma once

#include "impulse_game/model.hpp"

namespace impulse_game::testing {

// Baseline parameterization used throughout the numerical examples.
inline GameParams baseline() {
  GameParams p;
  p.a = 0.1;
  p.b = -0.3;
  p.w1 = 1.0;
  p.s1 = 1.0;
  p.r1 = 1.0;
  p.z1 = 2.0;
  p.w2 = 4.0;
  p.s2 = 1.0;
  p.c = 2.0;
  p.C = 3.0;
  p.D = 5.0;
  p.d = 3.0;
  p.rho1 = 2.5;
  p.rho2 = 5.0;
  p.T = 1.0;
  return p;
}

inline GameParams baseline_w2_1() {
  GameParams p = baseline();
  p.w2 = 1.0;
  return p;
}

inline StateBox unit_box() { return {0.0, 10.0}; }

}  // namespace impulse_game::testing
