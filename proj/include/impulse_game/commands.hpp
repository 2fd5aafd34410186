// Pipelines behind the command-line tool. Each command writes CSV files into
// cfg.output_dir and returns what it computed, so tests can inspect both.

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "impulse_game/config.hpp"
#include "impulse_game/policy.hpp"
#include "impulse_game/riccati.hpp"
#include "impulse_game/simulate.hpp"
#include "impulse_game/verify.hpp"

namespace impulse_game {

// Full pipeline: constants, backward sweep, threshold policy.
struct Solution {
  CoefficientPath path;
  ThresholdPolicy policy;
};

Solution solve(const GameParams& params, std::size_t n_steps);

// "%.12g"; the C locale is never changed, so '.' is the separator.
std::string format_number(double value);

void write_thresholds_csv(std::ostream& out, const ThresholdPolicy& policy);
void write_coefficients_csv(std::ostream& out, const CoefficientPath& path);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_events_csv(std::ostream& out, const Trajectory& traj);
void write_report_csv(std::ostream& out, const VerificationReport& report);
void write_boundary_roots_csv(std::ostream& out, const VerificationReport& report);
void write_summary(std::ostream& out, const VerificationReport& report);

Solution cmd_solve(const RunConfig& cfg);
std::vector<Trajectory> cmd_simulate(const RunConfig& cfg);
std::vector<ValueSample> cmd_value(const RunConfig& cfg, double t);
VerificationReport cmd_verify(const RunConfig& cfg, std::ostream& summary);
ImpulseBound cmd_bound(const RunConfig& cfg, std::ostream& out);

std::filesystem::path trajectory_file(const RunConfig& cfg, double x0);
std::filesystem::path events_file(const RunConfig& cfg, double x0);
std::filesystem::path values_file(const RunConfig& cfg, double t);

}  // namespace impulse_game
