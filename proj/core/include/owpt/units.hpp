#pragma once

#include <numbers>

namespace owpt {

/// Vacuum permeability, exact pre-2019 SI value [H/m].
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;

inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// RMS of the fundamental of a full-bridge square wave driven from `v_dc`.
double source_rms_from_dc(double v_dc);

inline constexpr double angular_frequency(double f_hz) { return 2.0 * kPi * f_hz; }

}  // namespace owpt
