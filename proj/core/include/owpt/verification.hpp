#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "owpt/sweep.hpp"

namespace owpt {

/// Reference values the prototype reported, with the model margins applied.
namespace reference {
inline constexpr double kM0 = 3.1e-6;
inline constexpr double kM0Tolerance = 0.15;
inline constexpr double kCrossRatio = 50.0;
inline constexpr double kGammaLow = 0.60;
inline constexpr double kGammaHigh = 0.80;
inline constexpr double kXtAutoLow = 14.0;
inline constexpr double kXtAutoHigh = 19.0;
inline constexpr double kEtaFloor = 0.88;
inline constexpr double kEtaMeanHigh = 0.97;
inline constexpr int kPowerDips = 6;
}  // namespace reference

struct Verdict {
  std::string name;
  bool applicable = true;
  bool passed = false;
  std::string detail;
};

/// Indices i with v[i] strictly below both circular neighbours.
std::vector<std::size_t> circular_local_minima(std::span<const double> values);

/// Number of grid steps in `shift_deg` when the sweep is one full revolution on a
/// uniform grid that `shift_deg` divides; nullopt otherwise.
std::optional<std::size_t> revolution_shift(const SweepResult& result, double shift_deg);

/// Records of one revolution (the duplicated 360 deg end point dropped), or empty
/// if the sweep does not cover exactly one revolution.
std::vector<const SweepRecord*> revolution(const SweepResult& result);

/// Scenario-level checks against the reference values above.
std::vector<Verdict> verify_sweep(const SweepResult& result);

bool all_passed(const std::vector<Verdict>& verdicts);

}  // namespace owpt
