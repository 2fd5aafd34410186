#include "impulse_game/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "impulse_game/errors.hpp"

namespace impulse_game {
namespace {

std::string join_fields(const std::vector<std::string>& fields) {
  std::string out;
  for (const auto& f : fields) {
    if (!out.empty()) out += ", ";
    out += f;
  }
  return out;
}

}  // namespace

InvalidParameters::InvalidParameters(std::vector<std::string> fields)
    : InputError("invalid parameters: " + join_fields(fields)),
      fields_(std::move(fields)) {}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : InputError(line == 0 ? message
                           : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

NonFinite::NonFinite(std::size_t node, const std::string& what)
    : ModelError("non-finite " + what + " at node " + std::to_string(node)),
      node_(node) {}

ConvexityViolation::ConvexityViolation(std::size_t node, double t, double p2)
    : ModelError("convexity violation: p2(" + std::to_string(t) +
                 ") = " + std::to_string(p2) + " <= 0 at node " +
                 std::to_string(node)),
      node_(node) {}

OrderingViolation::OrderingViolation(std::size_t node, double t)
    : ModelError("ordering ell1 < alpha < beta < ell2 violated at node " +
                 std::to_string(node) + " (t = " + std::to_string(t) + ")"),
      node_(node) {}

GameParams validate(const GameParams& p) {
  std::vector<std::string> bad;
  const std::pair<const char*, double> positive[] = {
      {"w1", p.w1}, {"r1", p.r1}, {"z1", p.z1}, {"s1", p.s1}, {"w2", p.w2},
      {"s2", p.s2}, {"C", p.C},   {"D", p.D},   {"c", p.c},   {"d", p.d},
      {"T", p.T}};
  for (const auto& [name, value] : positive) {
    // !(x > 0) also rejects NaN.
    if (!(value > 0.0) || !std::isfinite(value)) bad.emplace_back(name);
  }
  const std::pair<const char*, double> finite[] = {
      {"a", p.a}, {"b", p.b}, {"rho1", p.rho1}, {"rho2", p.rho2}};
  for (const auto& [name, value] : finite) {
    if (!std::isfinite(value)) bad.emplace_back(name);
  }
  if (!bad.empty()) throw InvalidParameters(std::move(bad));
  return p;
}

StateBox validate(const StateBox& box) {
  std::vector<std::string> bad;
  if (!std::isfinite(box.lo)) bad.emplace_back("x_lo");
  if (!std::isfinite(box.hi)) bad.emplace_back("x_hi");
  if (bad.empty() && !(box.lo < box.hi)) bad.emplace_back("x_lo < x_hi");
  if (!bad.empty()) throw InvalidParameters(std::move(bad));
  return box;
}

double impulse_cost(const GameParams& p, double xi) {
  if (xi > 0.0) return p.C + p.c * xi;
  if (xi < 0.0) return p.D - p.d * xi;
  return std::min(p.C, p.D);
}

double player1_impulse_cost(const GameParams& p, double xi) {
  return p.z1 * std::abs(xi);
}

double min_intervention_cost(const GameParams& p) { return std::min(p.C, p.D); }

double running_cost_p1(const GameParams& p, double x, double u) {
  const double dev = x - p.rho1;
  return 0.5 * (p.w1 * dev * dev + p.r1 * u * u);
}

double running_cost_p2(const GameParams& p, double x) {
  const double dev = x - p.rho2;
  return 0.5 * p.w2 * dev * dev;
}

double terminal_cost_p1(const GameParams& p, double x) {
  const double dev = x - p.rho1;
  return 0.5 * p.s1 * dev * dev;
}

double terminal_cost_p2(const GameParams& p, double x) {
  const double dev = x - p.rho2;
  return 0.5 * p.s2 * dev * dev;
}

}  // namespace impulse_game
