#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "impulse_game/config.hpp"
#include "impulse_game/errors.hpp"
#include "support/fixtures.hpp"

namespace impulse_game {
namespace {

std::filesystem::path config_dir() {
  const char* dir = std::getenv("IMPULSE_GAME_CONFIG_DIR");
  return dir ? dir : "configs";
}

const char* kBaseline = R"(# comment line
a = 0.1
b = -0.3
w1 = 1
r1 = 1
z1 = 2
s1 = 1
rho1 = 2.5
w2 = 4      # trailing comment
s2 = 1
rho2 = 5
C = 3
D = 5
c = 2
d = 3
T = 1
x_lo = 0
x_hi = 10
)";

void expect_same(const GameParams& a, const GameParams& b) {
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(a.w1, b.w1);
  EXPECT_EQ(a.r1, b.r1);
  EXPECT_EQ(a.z1, b.z1);
  EXPECT_EQ(a.s1, b.s1);
  EXPECT_EQ(a.rho1, b.rho1);
  EXPECT_EQ(a.w2, b.w2);
  EXPECT_EQ(a.s2, b.s2);
  EXPECT_EQ(a.rho2, b.rho2);
  EXPECT_EQ(a.C, b.C);
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(a.c, b.c);
  EXPECT_EQ(a.d, b.d);
  EXPECT_EQ(a.T, b.T);
}

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return 0;
}

TEST(ParseConfig, MinimalTextWithDefaults) {
  const RunConfig cfg = parse_config(kBaseline);
  expect_same(cfg.params, testing::baseline());
  EXPECT_EQ(cfg.box.lo, 0.0);
  EXPECT_EQ(cfg.box.hi, 10.0);
  EXPECT_EQ(cfg.n_steps, 4096u);
  EXPECT_DOUBLE_EQ(cfg.sim_step, 1.0 / 4096);
  EXPECT_EQ(cfg.nt, 200u);
  EXPECT_EQ(cfg.nx, 200u);
  EXPECT_TRUE(cfg.initial_states.empty());
  EXPECT_EQ(cfg.output_dir, std::filesystem::path("."));
}

TEST(ParseConfig, ShippedBaselineFile) {
  const RunConfig cfg = load_config(config_dir() / "table1.cfg");
  expect_same(cfg.params, testing::baseline());
  EXPECT_EQ(cfg.initial_states, (std::vector<double>{2.0, 5.0, 8.0}));
}

TEST(ParseConfig, ShippedLowerRunningWeightFile) {
  const RunConfig cfg = load_config(config_dir() / "table1_w2_1.cfg");
  expect_same(cfg.params, testing::baseline_w2_1());
  EXPECT_EQ(cfg.params.w2, 1.0);
}

TEST(ParseConfig, TuningKeys) {
  const RunConfig cfg = parse_config(std::string(kBaseline) +
                                     "n_steps = 128\nsim_step = 0.01\nnt = 20\nnx = 30\n"
                                     "initial_states = 1.5,2 , 3e0\noutput_dir = some/dir\n");
  EXPECT_EQ(cfg.n_steps, 128u);
  EXPECT_EQ(cfg.sim_step, 0.01);
  EXPECT_EQ(cfg.nt, 20u);
  EXPECT_EQ(cfg.nx, 30u);
  EXPECT_EQ(cfg.initial_states, (std::vector<double>{1.5, 2.0, 3.0}));
  EXPECT_EQ(cfg.output_dir, std::filesystem::path("some/dir"));
}

TEST(ParseConfig, EmptyTextListsRequiredKeys) {
  try {
    parse_config("");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const char* key : {"a", "b", "w1", "rho2", "T", "x_lo", "x_hi"}) {
      EXPECT_NE(msg.find(key), std::string::npos) << key;
    }
    EXPECT_NE(msg.find("missing required keys"), std::string::npos);
  }
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  const std::string base(kBaseline);  // 18 lines
  EXPECT_EQ(error_line(base + "bogus = 1\n"), 19u);
  EXPECT_EQ(error_line(base + "\nnt = 1.5\n"), 20u);
  EXPECT_EQ(error_line(base + "a = 2\n"), 19u);
  EXPECT_EQ(error_line(base + "no equals sign\n"), 19u);
  EXPECT_EQ(error_line(base + "initial_states = 1, x\n"), 19u);
  EXPECT_EQ(error_line(base + "nx = 1\n"), 19u);
  EXPECT_EQ(error_line(base + "sim_step = -1\n"), 19u);
  std::string bad_number = base;
  bad_number.replace(bad_number.find("b = -0.3"), 8, "b = -0.3x");
  EXPECT_EQ(error_line(bad_number), 3u);
}

TEST(ParseConfig, InvalidParametersNamed) {
  std::string text(kBaseline);
  text.replace(text.find("C = 3"), 5, "C = -3");
  try {
    parse_config(text);
    FAIL();
  } catch (const InvalidParameters& e) {
    EXPECT_EQ(e.fields(), std::vector<std::string>{"C"});
  }
}

TEST(ParseConfig, DegenerateBoxRejected) {
  std::string text(kBaseline);
  text.replace(text.find("x_lo = 0"), 8, "x_lo = 5");
  text.replace(text.find("x_hi = 10"), 9, "x_hi = 5");
  EXPECT_THROW(parse_config(text), InputError);
}

TEST(LoadConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/file.cfg"), ConfigError);
}

}  // namespace
}  // namespace impulse_game
