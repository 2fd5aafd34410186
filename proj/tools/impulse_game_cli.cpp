// impulse-game: solve, simulate and verify the linear-quadratic impulse game.
//
//   impulse-game solve    --config run.cfg
//   impulse-game simulate --config run.cfg
//   impulse-game value    --config run.cfg --t 0
//   impulse-game verify   --config run.cfg
//   impulse-game bound    --config run.cfg
//
// Exit codes: 0 ok, 1 config error, 2 model/numeric violation,
// 3 verification failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "impulse_game/commands.hpp"
#include "impulse_game/config.hpp"
#include "impulse_game/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kModelError = 2;
constexpr int kVerifyFailed = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback Nash equilibrium of a scalar LQ game with impulse control"};
  app.require_subcommand(1);

  std::string config_path;
  double value_time = 0.0;

  auto* solve = app.add_subcommand("solve", "write thresholds.csv and coefficients.csv");
  auto* simulate = app.add_subcommand("simulate", "roll out equilibrium play from initial_states");
  auto* value = app.add_subcommand("value", "tabulate V1, V2 over the state box at time t");
  auto* verify = app.add_subcommand("verify", "check HJB/QVI conditions on a grid");
  auto* bound = app.add_subcommand("bound", "print the impulse-count bound K");
  for (auto* sub : {solve, simulate, value, verify, bound}) {
    sub->add_option("--config", config_path, "key=value parameter file")->required();
  }
  value->add_option("--t", value_time, "time in [0, T]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const impulse_game::RunConfig cfg = impulse_game::load_config(config_path);
    if (solve->parsed()) {
      impulse_game::cmd_solve(cfg);
    } else if (simulate->parsed()) {
      impulse_game::cmd_simulate(cfg);
    } else if (value->parsed()) {
      impulse_game::cmd_value(cfg, value_time);
    } else if (verify->parsed()) {
      const auto report = impulse_game::cmd_verify(cfg, std::cout);
      if (!report.all_pass()) return kVerifyFailed;
    } else if (bound->parsed()) {
      impulse_game::cmd_bound(cfg, std::cout);
    }
  } catch (const impulse_game::InputError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const impulse_game::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kModelError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kModelError;
  }
  return kOk;
}
