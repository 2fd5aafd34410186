#include "impulse_game/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <system_error>

#include "impulse_game/errors.hpp"

namespace impulse_game {
namespace {

constexpr const char* kRequired[] = {"a",  "b",  "w1",   "r1", "z1", "s1",
                                     "rho1", "w2", "s2", "rho2", "C",  "D",
                                     "c",  "d",  "T",    "x_lo", "x_hi"};
constexpr const char* kOptional[] = {"n_steps", "sim_step",       "nt",
                                     "nx",      "initial_states", "output_dir"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::size_t line,
                  std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(line, "cannot parse '" + std::string(text) +
                                "' as a number for key '" + std::string(key) +
                                "'");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::size_t line,
                        std::string_view key) {
  text = trim(text);
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(line, "cannot parse '" + std::string(text) +
                                "' as a positive integer for key '" +
                                std::string(key) + "'");
  }
  return value;
}

bool known(std::string_view key) {
  for (const char* k : kRequired) {
    if (key == k) return true;
  }
  for (const char* k : kOptional) {
    if (key == k) return true;
  }
  return false;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Entry, std::less<>> entries;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!known(key)) throw ConfigError(line_no, "unknown key '" + key + "'");
    if (entries.count(key) != 0) {
      throw ConfigError(line_no, "duplicate key '" + key + "'");
    }
    entries[key] = {std::string(trim(line.substr(eq + 1))), line_no};
  }

  std::string missing;
  for (const char* k : kRequired) {
    if (entries.count(k) == 0) {
      if (!missing.empty()) missing += ", ";
      missing += k;
    }
  }
  if (!missing.empty()) throw ConfigError(0, "missing required keys: " + missing);

  auto real = [&](const char* key) {
    const Entry& e = entries.at(key);
    return parse_real(e.value, e.line, key);
  };

  RunConfig cfg;
  GameParams& p = cfg.params;
  p.a = real("a");
  p.b = real("b");
  p.w1 = real("w1");
  p.r1 = real("r1");
  p.z1 = real("z1");
  p.s1 = real("s1");
  p.rho1 = real("rho1");
  p.w2 = real("w2");
  p.s2 = real("s2");
  p.rho2 = real("rho2");
  p.C = real("C");
  p.D = real("D");
  p.c = real("c");
  p.d = real("d");
  p.T = real("T");
  cfg.box.lo = real("x_lo");
  cfg.box.hi = real("x_hi");

  auto count = [&](const char* key, std::size_t fallback, std::size_t min) {
    const auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    const std::size_t v = parse_count(it->second.value, it->second.line, key);
    if (v < min) {
      throw ConfigError(it->second.line, std::string(key) + " must be >= " +
                                             std::to_string(min));
    }
    return v;
  };
  cfg.n_steps = count("n_steps", 4096, 2);
  cfg.nt = count("nt", 200, 2);
  cfg.nx = count("nx", 200, 2);

  validate(p);
  validate(cfg.box);

  cfg.sim_step = p.T / 4096.0;
  if (const auto it = entries.find("sim_step"); it != entries.end()) {
    cfg.sim_step = parse_real(it->second.value, it->second.line, "sim_step");
    if (!(cfg.sim_step > 0.0)) {
      throw ConfigError(it->second.line, "sim_step must be positive");
    }
  }

  if (const auto it = entries.find("initial_states"); it != entries.end()) {
    std::string_view rest = it->second.value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      cfg.initial_states.push_back(
          parse_real(rest.substr(0, comma), it->second.line, "initial_states"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (const auto it = entries.find("output_dir"); it != entries.end()) {
    if (it->second.value.empty()) {
      throw ConfigError(it->second.line, "output_dir is empty");
    }
    cfg.output_dir = it->second.value;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(0, "cannot open config file " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace impulse_game
