#pragma once

#include <array>
#include <vector>

#include "owpt/circuit.hpp"

namespace owpt {

/// Tx-side switching controller tuning.
struct ControllerSettings {
  /// Angular margin beyond +-90 deg before a Tx current counts as opposing its source.
  double phase_tolerance = 1e-6;
  /// Channels with |I_Tx,i| below dead_band * max_j |I_Tx,j| are never flipped.
  double dead_band = 1e-3;
  int max_iters = 8;

  void validate() const;
};

struct PolarityState {
  Polarity signs;
  bool converged = false;
  /// Number of circuit solves performed.
  int iterations = 0;
  /// Sign patterns in the order they were tried.
  std::vector<Polarity> visited;
  /// Set when a pattern repeated before convergence.
  bool oscillated = false;
};

struct ControllerResult {
  SystemConfig config;
  PolarityState state;
};

/// Flags channels whose Tx current opposes the source phasor (the real axis):
/// Re(I) < -sin(tolerance) |I|, outside the dead-band.
std::array<bool, 3> detect_out_of_phase(const PhasorSolution& solution, double tolerance,
                                        double dead_band = ControllerSettings{}.dead_band);

/// Solve, detect, flip every flagged channel at once; repeat until nothing is flagged.
///
/// Never loops silently: a repeated sign pattern or max_iters without convergence
/// returns with converged = false and the visited patterns.
ControllerResult run_controller(const SystemConfig& config,
                                const ControllerSettings& settings = ControllerSettings{});

}  // namespace owpt
