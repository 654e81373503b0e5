#include <gtest/gtest.h>

#include <cmath>

#include "owpt/error.hpp"
#include "owpt/scenario.hpp"
#include "owpt/units.hpp"

namespace owpt {
namespace {

const std::string kBundled = std::string(OWPT_SCENARIO_DIR) + "/prototype.scenario";

TEST(ScenarioFile, BundledFileMatchesDefaults) {
  const Scenario s = load_scenario(kBundled);
  const Scenario d = default_scenario();
  EXPECT_DOUBLE_EQ(s.layout.tx_radius, d.layout.tx_radius);
  EXPECT_DOUBLE_EQ(s.layout.rp_radius, d.layout.rp_radius);
  EXPECT_DOUBLE_EQ(s.layout.rx_radius, d.layout.rx_radius);
  EXPECT_EQ(s.layout.rx_turns, 10);
  EXPECT_DOUBLE_EQ(s.layout.pitch, 4e-3);
  EXPECT_DOUBLE_EQ(s.rx_distance, 0.2);
  EXPECT_DOUBLE_EQ(s.f0, 592.6e3);
  EXPECT_DOUBLE_EQ(s.r_load, 20.0);
  ASSERT_TRUE(s.x_t.has_value());
  EXPECT_DOUBLE_EQ(*s.x_t, 17.5);
  EXPECT_DOUBLE_EQ(s.layout.tx[2].resistance, 0.039);
  EXPECT_DOUBLE_EQ(s.layout.rx.inductance, 75.93e-6);
  EXPECT_EQ(s.sweep.angles_deg().size(), 73u);
  EXPECT_TRUE(s.warm_start);
  EXPECT_NEAR(s.source_rms(), source_rms_from_dc(10.0), 1e-15);
}

TEST(ScenarioFile, MissingFileIsConfigError) {
  EXPECT_THROW(load_scenario("/nonexistent/file.scenario"), ConfigError);
}

TEST(ScenarioParse, EmptyObjectGivesDefaults) {
  const Scenario s = parse_scenario("{}");
  EXPECT_DOUBLE_EQ(s.layout.tx_radius, 0.130);
  EXPECT_EQ(s.sweep.angles_deg().size(), 73u);
}

TEST(ScenarioParse, UnitsAreConvertedAtTheBoundary) {
  const Scenario s = parse_scenario(R"({
    // comments are allowed
    "layout": { "tx_radius_mm": 100, "rx_distance_mm": 250, "triad_tilt_deg": 90 },
    "coils": { "Rp2": { "L_uH": 8.0, "R_ohm": 0.1 } },
    "electrical": { "f0_kHz": 500 }
  })");
  EXPECT_DOUBLE_EQ(s.layout.tx_radius, 0.1);
  EXPECT_DOUBLE_EQ(s.rx_distance, 0.25);
  EXPECT_DOUBLE_EQ(s.layout.triad_tilt, kPi / 2.0);
  EXPECT_DOUBLE_EQ(s.layout.rp[1].inductance, 8e-6);
  EXPECT_DOUBLE_EQ(s.layout.rp[1].resistance, 0.1);
  EXPECT_DOUBLE_EQ(s.layout.rp[0].resistance, 0.055);
  EXPECT_DOUBLE_EQ(s.f0, 500e3);
}

TEST(ScenarioParse, SourceSelection) {
  Scenario s = parse_scenario(R"({"electrical": {"V_s": 5}})");
  EXPECT_FALSE(s.v_dc.has_value());
  EXPECT_DOUBLE_EQ(s.source_rms(), 5.0);
  s = parse_scenario(R"({"electrical": {"V_dc": 12}})");
  EXPECT_NEAR(s.source_rms(), source_rms_from_dc(12.0), 1e-15);
  EXPECT_THROW(parse_scenario(R"({"electrical": {"V_dc": 12, "V_s": 5}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"electrical": {"V_dc": null}})"), ConfigError);
}

TEST(ScenarioParse, ReactanceAutoOrNumber) {
  EXPECT_FALSE(parse_scenario(R"({"electrical": {"X_t_ohm": "auto"}})").x_t.has_value());
  EXPECT_DOUBLE_EQ(*parse_scenario(R"({"electrical": {"X_t_ohm": 16}})").x_t, 16.0);
  EXPECT_THROW(parse_scenario(R"({"electrical": {"X_t_ohm": "tuned"}})"), ConfigError);
}

TEST(ScenarioParse, StrictKeys) {
  EXPECT_THROW(parse_scenario(R"({"layuot": {}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"layout": {"tx_radius": 0.1}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"coils": {"Tx4": {}}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"coils": {"Tx1": {"L": 1}}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"sweep": 5})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"sweep": {"step_deg": "five"}})"), ConfigError);
  EXPECT_THROW(parse_scenario("{ not json"), ConfigError);
  EXPECT_THROW(parse_scenario("[1, 2]"), ConfigError);
}

TEST(ScenarioParse, InvariantsAreChecked) {
  EXPECT_THROW(parse_scenario(R"({"sweep": {"step_deg": 0}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"sweep": {"start_deg": 10, "stop_deg": 10}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"layout": {"rx_distance_mm": 0}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"layout": {"tx_turns": 0}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"electrical": {"R_load_ohm": 0}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"electrical": {"initial_signs": [1, 0, 1]}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"controller": {"max_iters": 0}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"quadrature": {"rel_tol": -1}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"coils": {"Rx": {"L_uH": 0}}})"), ConfigError);
}

TEST(ScenarioParse, Overrides) {
  const Scenario s = parse_scenario(
      "{}", {"sweep.step_deg=30", "electrical.X_t_ohm=auto", "electrical.initial_signs=[1,-1,1]",
             "controller.enabled=false", "output.csv=out.csv", "coils.Tx1.R_ohm=0.1"});
  EXPECT_DOUBLE_EQ(s.sweep.step_deg, 30.0);
  EXPECT_FALSE(s.x_t.has_value());
  EXPECT_EQ(s.initial_polarity, Polarity({1, -1, 1}));
  EXPECT_FALSE(s.controller_enabled);
  EXPECT_EQ(s.csv_path, "out.csv");
  EXPECT_DOUBLE_EQ(s.layout.tx[0].resistance, 0.1);
  EXPECT_THROW(parse_scenario("{}", {"novalue"}), ConfigError);
  EXPECT_THROW(parse_scenario("{}", {"=3"}), ConfigError);
  EXPECT_THROW(parse_scenario("{}", {"layout.bogus=3"}), ConfigError);
}

TEST(SweepGridTest, IncludesStopWhenOnGrid) {
  EXPECT_EQ((SweepGrid{0, 360, 5}.angles_deg().size()), 73u);
  EXPECT_EQ((SweepGrid{0, 10, 3}.angles_deg()), (std::vector<double>{0, 3, 6, 9}));
  EXPECT_EQ((SweepGrid{0, 0.3, 0.1}.angles_deg().size()), 4u);
}

}  // namespace
}  // namespace owpt
