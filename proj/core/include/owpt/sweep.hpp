#pragma once

#include <array>
#include <string>
#include <vector>

#include "owpt/circuit.hpp"
#include "owpt/magnetics.hpp"
#include "owpt/polarity.hpp"
#include "owpt/scenario.hpp"

namespace owpt {

/// One receiver position of a sweep.
struct SweepRecord {
  double angle_deg = 0.0;
  std::array<double, 3> m{};        ///< Rp-to-Rx [H]
  std::array<double, 3> gamma{};    ///< Tx-to-Rx over Rp-to-Rx
  std::array<double, 3> gamma_m{};  ///< Tx-to-Rx [H]
  Polarity signs;
  PhasorSolution solution;  ///< lossy full solve with the final signs
  double m_sum_abs = 0.0;
  double p_out = 0.0;
  double eta = 0.0;
  int controller_iterations = 0;
  /// Empty on success; the sweep keeps going past per-angle failures.
  std::string error;

  bool ok() const { return error.empty(); }
  const std::array<Complex, 3>& i_tx() const { return solution.i_tx; }
  const std::array<Complex, 3>& i_rp() const { return solution.i_rp; }
  Complex i_rx() const { return solution.i_rx; }
};

struct SweepResult {
  std::vector<SweepRecord> records;
  ClusterCouplings cluster;
  double omega0 = 0.0;
  double v_s = 0.0;
  double r_load = 0.0;
  double dead_band = 0.0;
  double m0_mean = 0.0;
  /// Mean gamma over every channel and angle outside the dead-band.
  double gamma_mean = 0.0;
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  /// 2 omega0 gamma_mean m0_mean, reported whether or not it was used.
  double x_t_auto = 0.0;
  double x_t_used = 0.0;
};

/// True when |m[i]| is at least `dead_band` times the largest |m[j]|; gamma is only
/// meaningful for such channels (it is 0/0 at a coupling zero crossing).
bool gamma_defined(const std::array<double, 3>& m, std::size_t i, double dead_band);

/// Lossy circuit for one coupling state, from the scenario's measured parameters.
SystemConfig circuit_config(const Scenario& scenario, const CouplingSet& couplings, double x_t);

/// Runs couplings -> controller -> full solve at every grid angle, in angle order.
/// Deterministic for a given scenario.
SweepResult run_sweep(const Scenario& scenario);

/// Lossless companion of a record: zero parasitics, Gamma = gamma_mean M, one M0,
/// X_t tuned to 2 omega0 gamma_mean M0 and the record's signs.
SystemConfig lossless_tuned_config(const SweepResult& result, const SweepRecord& record);

struct SweepSummary {
  std::size_t records = 0;
  std::size_t failures = 0;
  double eta_min = 0.0;
  double eta_mean = 0.0;
  double eta_max = 0.0;
  double p_out_min = 0.0;
  double p_out_max = 0.0;
  double p_out_ratio = 0.0;   ///< min / max
  double p_out_ripple = 0.0;  ///< (max - min) / max
  double m_sum_min = 0.0;
  double m_sum_max = 0.0;
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  double x_t_auto = 0.0;
  double x_t_used = 0.0;
  std::array<double, 3> m0{};
  double max_cross_channel = 0.0;
};

/// Statistics over successful records. Throws InvalidConfig on an empty record list.
SweepSummary summarize(const SweepResult& result);

/// Human-readable report including verification verdicts.
std::string render_summary(const SweepResult& result);

}  // namespace owpt
