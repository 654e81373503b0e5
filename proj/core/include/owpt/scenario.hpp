#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owpt/geometry.hpp"
#include "owpt/polarity.hpp"
#include "owpt/quadrature.hpp"

namespace owpt {

/// Receiver angle grid in degrees; `stop` is included when it lands on the grid.
struct SweepGrid {
  double start_deg = 0.0;
  double stop_deg = 360.0;
  double step_deg = 5.0;

  void validate() const;
  std::vector<double> angles_deg() const;
};

/// Everything needed to run a receiver-rotation experiment. SI units throughout;
/// the scenario file uses mm, uH, kHz and degrees and is converted on load.
struct Scenario {
  LayoutParams layout;
  double rx_distance = 0.200;

  double f0 = 592.6e3;  ///< working frequency [Hz]
  double r_load = 20.0;
  /// Exactly one of v_dc / v_s is set; v_s = 2 sqrt(2) v_dc / pi otherwise.
  std::optional<double> v_dc = 10.0;
  std::optional<double> v_s;
  /// Transmitter residual reactance; nullopt selects automatic tuning.
  std::optional<double> x_t = 17.5;
  bool include_cross = false;
  Polarity initial_polarity;

  bool controller_enabled = true;
  /// Seed each angle with the previous angle's signs, as switches holding state
  /// while the receiver moves. A cold start at an exact symmetric null stays there.
  bool warm_start = true;
  ControllerSettings controller;
  QuadratureSpec quadrature;
  SweepGrid sweep;

  std::string csv_path;
  std::string summary_path;

  double omega0() const;
  double source_rms() const;
  /// Throws ConfigError.
  void validate() const;
};

/// Parses the scenario format (JSON with // comments). Each override is
/// "section.key=value"; the value is read as JSON, or as a bare string if that fails.
Scenario parse_scenario(std::string_view text, const std::vector<std::string>& overrides = {});

Scenario load_scenario(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides = {});

/// Built-in defaults (the prototype geometry and measured coil table).
Scenario default_scenario();

}  // namespace owpt
