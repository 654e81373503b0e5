#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "owpt/error.hpp"
#include "owpt/magnetics.hpp"
#include "owpt/polarity.hpp"
#include "owpt/sweep.hpp"
#include "owpt/units.hpp"
#include "support.hpp"

namespace owpt {
namespace {

SystemConfig lossless_with(const std::array<double, 3>& m) {
  auto c = testing::prototype_lossy(m);
  c.r_tx = c.r_rp = {0.0, 0.0, 0.0};
  c.r_rx = 0.0;
  return c;
}

double best_of_eight(SystemConfig c) {
  double best = 0.0;
  for (int p = 0; p < 8; ++p) {
    c.polarity = Polarity({p & 1 ? -1 : 1, p & 2 ? -1 : 1, p & 4 ? -1 : 1});
    best = std::max(best, solve_full(c).p_out);
  }
  return best;
}

TEST(Detect, InPhaseWhenAllCouplingsPositive) {
  const auto s = solve_full(lossless_with({1e-6, 0.8e-6, 1.2e-6}));
  EXPECT_EQ(detect_out_of_phase(s, 1e-6), (std::array<bool, 3>{false, false, false}));
}

TEST(Detect, FlagsTheDestructiveChannel) {
  const auto s = solve_full(lossless_with({2e-6, -1.5e-6, 1e-6}));
  EXPECT_EQ(detect_out_of_phase(s, 1e-6), (std::array<bool, 3>{false, true, false}));
}

TEST(Detect, DeadBandSuppressesTinyChannels) {
  PhasorSolution s;
  s.i_tx = {Complex(1.0, 0.0), Complex(-1e-4, 1e-5), Complex(0.5, 0.0)};
  EXPECT_EQ(detect_out_of_phase(s, 1e-6, 1e-3), (std::array<bool, 3>{false, false, false}));
  EXPECT_EQ(detect_out_of_phase(s, 1e-6, 0.0), (std::array<bool, 3>{false, true, false}));
  PhasorSolution zero;
  EXPECT_EQ(detect_out_of_phase(zero, 1e-6), (std::array<bool, 3>{false, false, false}));
}

TEST(Detect, ToleranceBandAroundQuadrature) {
  PhasorSolution s;
  s.i_tx = {Complex(-1e-9, 1.0), Complex(1.0, 0.0), Complex(1.0, 0.0)};
  EXPECT_FALSE(detect_out_of_phase(s, 1e-6)[0]);
  EXPECT_TRUE(detect_out_of_phase(s, 0.0)[0]);
}

TEST(Controller, FlipsNegativeChannel) {
  const auto r = run_controller(lossless_with({2e-6, -1.5e-6, 1e-6}));
  EXPECT_TRUE(r.state.converged);
  EXPECT_EQ(r.state.signs, Polarity({1, -1, 1}));
  EXPECT_NEAR(r.config.signed_m_sum(), 4.5e-6, 1e-18);
  EXPECT_EQ(r.config.polarity, r.state.signs);
}

TEST(Controller, AllPositiveConvergesInOneIteration) {
  const auto r = run_controller(lossless_with({1e-6, 0.8e-6, 1.2e-6}));
  EXPECT_TRUE(r.state.converged);
  EXPECT_EQ(r.state.iterations, 1);
  EXPECT_EQ(r.state.signs, Polarity());
}

TEST(Controller, ConvergedStateIsAFixedPoint) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const auto first = run_controller(testing::random_tuned_lossless(rng));
    ASSERT_TRUE(first.state.converged);
    const auto again = run_controller(first.config);
    EXPECT_EQ(again.state.signs, first.state.signs);
    EXPECT_EQ(again.state.iterations, 1);
  }
}

TEST(Controller, ReachesTheBestOfAllEightPatterns) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 500; ++k) {
    const auto c = testing::random_tuned_lossless(rng);
    const auto r = run_controller(c);
    ASSERT_TRUE(r.state.converged);
    EXPECT_LE(r.state.iterations, 4);
    EXPECT_GE(solve_full(r.config).p_out, best_of_eight(c) * (1.0 - 1e-12));
    double mag = 0.0;
    for (double m : c.couplings.m) mag += std::abs(m);
    EXPECT_NEAR(std::abs(r.config.signed_m_sum()), mag, 1e-15 * mag);
  }
}

TEST(Controller, LossySystemsConvergeFromNonNullStarts) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> pattern(0, 7);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    auto c = testing::prototype_lossy(testing::random_m(rng));
    const int p = pattern(rng);
    c.polarity = Polarity({p & 1 ? -1 : 1, p & 2 ? -1 : 1, p & 4 ? -1 : 1});
    // Near a cancelling pattern the loss current dominates every Tx phase.
    if (std::abs(c.signed_m_sum()) < 0.5e-6) continue;
    ++checked;
    const auto r = run_controller(c);
    ASSERT_TRUE(r.state.converged);
    EXPECT_LE(r.state.iterations, 4);
    EXPECT_GE(solve_full(r.config).p_out, best_of_eight(c) * (1.0 - 1e-9));
  }
  EXPECT_GT(checked, 200);
}

TEST(Controller, CancellingPatternIsALossyFixedPoint) {
  // Signed M_sum = 0: no Rx current, each Tx sees only its Rp loss, all in phase.
  auto c = testing::prototype_lossy({1.4e-6, -1.4e-6, 0.0});
  const auto r = run_controller(c);
  EXPECT_TRUE(r.state.converged);
  EXPECT_EQ(r.state.signs, Polarity());
  EXPECT_LT(solve_full(r.config).p_out, 1e-3 * best_of_eight(c));
}

TEST(Controller, IterationBudgetIsReported) {
  ControllerSettings s;
  s.max_iters = 1;
  const auto r = run_controller(lossless_with({2e-6, -1.5e-6, 1e-6}), s);
  EXPECT_FALSE(r.state.converged);
  EXPECT_FALSE(r.state.oscillated);
  ASSERT_EQ(r.state.visited.size(), 2u);
  EXPECT_EQ(r.state.visited[0], Polarity());
  EXPECT_EQ(r.state.visited[1], Polarity({1, -1, 1}));
}

TEST(Controller, AngleNinetyImprovesOnUncontrolled) {
  const auto base = paper_layout(0.0, 0.2);
  const auto cluster = cluster_couplings(base);
  Scenario sc;
  auto at = [&](double deg) {
    return circuit_config(sc, coupling_set(rotate_rx(base, deg_to_rad(deg)), cluster, {}, false),
                          17.5);
  };
  auto c = at(90.0);
  const double uncontrolled = solve_full(c).p_out;
  EXPECT_GE(solve_full(run_controller(c).config).p_out, uncontrolled);
  // Carrying the switch state from 85 deg, as a moving receiver would.
  auto prev = at(85.0);
  c.polarity = run_controller(prev).state.signs;
  const double controlled = solve_full(run_controller(c).config).p_out;
  EXPECT_GT(controlled, 1e3 * uncontrolled);
}

TEST(Controller, SettingsValidation) {
  ControllerSettings s;
  s.phase_tolerance = kPi / 2.0;
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = ControllerSettings{};
  s.dead_band = -0.1;
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = ControllerSettings{};
  s.max_iters = 0;
  EXPECT_THROW(run_controller(lossless_with({1e-6, 1e-6, 1e-6}), s), InvalidConfig);
}

}  // namespace
}  // namespace owpt
