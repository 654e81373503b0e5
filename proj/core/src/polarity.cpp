#include "owpt/polarity.hpp"

#include <algorithm>
#include <cmath>

#include "owpt/error.hpp"
#include "owpt/units.hpp"

namespace owpt {

namespace {
constexpr double kPhaseToleranceLimit = 0.5 * kPi;
}  // namespace

void ControllerSettings::validate() const {
  if (!(phase_tolerance >= 0.0) || !(phase_tolerance < kPhaseToleranceLimit)) {
    throw InvalidConfig("controller phase tolerance must be in [0, pi/2)");
  }
  if (!(dead_band >= 0.0) || !(dead_band < 1.0)) {
    throw InvalidConfig("controller dead-band must be in [0, 1)");
  }
  if (max_iters < 1) {
    throw InvalidConfig("controller needs at least one iteration");
  }
}

std::array<bool, 3> detect_out_of_phase(const PhasorSolution& solution, double tolerance,
                                        double dead_band) {
  double peak = 0.0;
  for (const auto& i : solution.i_tx) {
    peak = std::max(peak, std::abs(i));
  }
  const double margin = std::sin(tolerance);
  std::array<bool, 3> flags{false, false, false};
  if (peak == 0.0) {
    return flags;
  }
  for (std::size_t ch = 0; ch < 3; ++ch) {
    const double mag = std::abs(solution.i_tx[ch]);
    if (mag < dead_band * peak) {
      continue;
    }
    flags[ch] = solution.i_tx[ch].real() < -margin * mag;
  }
  return flags;
}

ControllerResult run_controller(const SystemConfig& config, const ControllerSettings& settings) {
  settings.validate();
  ControllerResult result{config, {}};
  auto& state = result.state;
  state.signs = config.polarity;
  state.visited.push_back(state.signs);

  for (int iter = 1; iter <= settings.max_iters; ++iter) {
    state.iterations = iter;
    result.config.polarity = state.signs;
    const PhasorSolution sol = solve_full(result.config);
    const auto flags = detect_out_of_phase(sol, settings.phase_tolerance, settings.dead_band);
    if (std::none_of(flags.begin(), flags.end(), [](bool f) { return f; })) {
      state.converged = true;
      return result;
    }
    for (std::size_t ch = 0; ch < 3; ++ch) {
      if (flags[ch]) {
        state.signs.flip(ch);
      }
    }
    if (std::find(state.visited.begin(), state.visited.end(), state.signs) != state.visited.end()) {
      state.visited.push_back(state.signs);
      state.oscillated = true;
      return result;
    }
    state.visited.push_back(state.signs);
  }
  return result;
}

}  // namespace owpt
