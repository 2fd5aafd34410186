// Flat key=value run configuration, one pair per line, '#' starts a comment.
//
//   a = 0.1
//   b = -0.3
//   ...
//   initial_states = 2, 5, 8

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "impulse_game/model.hpp"

namespace impulse_game {

struct RunConfig {
  GameParams params;
  StateBox box;
  std::size_t n_steps = 4096;
  double sim_step = 0.0;  // T / 4096 unless given
  std::size_t nt = 200;
  std::size_t nx = 200;
  std::vector<double> initial_states;
  std::filesystem::path output_dir = ".";
};

// Throws ConfigError (with the line number where one applies) or
// InvalidParameters.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& file);

}  // namespace impulse_game
