#pragma once

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "owpt/magnetics.hpp"

namespace owpt {

using Complex = std::complex<double>;
using ImpedanceMatrix = Eigen::Matrix<Complex, kBranches, kBranches>;

/// Terminal polarity of the three transmitters; each entry is exactly +1 or -1.
class Polarity {
 public:
  Polarity() = default;
  explicit Polarity(const std::array<int, 3>& signs);

  int operator[](std::size_t channel) const { return signs_[channel]; }
  const std::array<int, 3>& signs() const noexcept { return signs_; }
  void flip(std::size_t channel) { signs_[channel] = -signs_[channel]; }

  bool operator==(const Polarity&) const = default;

 private:
  std::array<int, 3> signs_{1, 1, 1};
};

/// Complete phasor-domain scenario. Resistances are per coil; the Tx diagonal is
/// R_Tx + jX_t while Rp and Rx are resonant at omega0.
struct SystemConfig {
  double omega0 = 0.0;  ///< working angular frequency [rad/s]
  double v_s = 0.0;     ///< RMS source phasor, the phase reference [V]
  std::array<double, 3> r_tx{};
  std::array<double, 3> r_rp{};
  double r_rx = 0.0;
  double r_load = 0.0;
  double x_t = 0.0;
  Polarity polarity;
  CouplingSet couplings;

  /// Throws InvalidConfig. A zero load is accepted here; analytic routines reject it.
  void validate() const;
  bool lossless() const;

  /// Per-channel couplings with the polarity applied.
  std::array<double, 3> signed_m() const;
  std::array<double, 3> signed_gamma_m() const;
  double signed_m_sum() const;
};

/// Branch currents (RMS phasors) and the power flow they imply.
struct PhasorSolution {
  std::array<Complex, 3> i_tx{};
  std::array<Complex, 3> i_rp{};
  Complex i_rx{};
  double p_in = 0.0;
  double p_out = 0.0;
  double p_loss_tx = 0.0;
  double p_loss_rp = 0.0;
  double p_loss_rx = 0.0;

  double efficiency() const { return p_in > 0.0 ? p_out / p_in : 0.0; }
  /// Currents in branch order Tx1..Tx3, Rp1..Rp3, Rx.
  std::array<Complex, kBranches> currents() const;
};

struct InputImpedance {
  std::array<double, 3> r_in{};
  std::array<double, 3> x_in{};
};

struct PerformanceReport {
  double eta = 0.0;
  double xi_tx = 0.0;
  double xi_rp = 0.0;
  double xi_rx = 0.0;
  /// NaN when some M_i is zero (the closed form divides by M_i).
  std::array<double, 3> r_in{};
  std::array<double, 3> x_in{};
  double m_sum = 0.0;
  double p_out = 0.0;
  /// Set when M_sum = 0: no power reaches the load and eta is reported as 0.
  bool degenerate = false;
};

/// Block impedance matrix of the coupled resonators with polarity applied. When `couplings.cross` is
/// present every pairwise coupling enters, otherwise only M0, M and Gamma.
ImpedanceMatrix assemble_impedance(const SystemConfig& config);

/// Dense LU solve against V = [Vs Vs Vs 0 0 0 0]. Throws SingularSystem when the
/// reciprocal condition estimate falls below 1e-14.
PhasorSolution solve_full(const SystemConfig& config);

/// Power-flow bookkeeping from a set of currents.
PhasorSolution make_solution(const SystemConfig& config, const std::array<Complex, kBranches>& i);

/// Lossless input resistance and reactance seen by each transmitter (parasitics ignored).
/// Throws UndefinedImpedance if any M_i or M_sum is zero.
InputImpedance input_impedance(const SystemConfig& config);

/// Transmitter reactance that nulls every input reactance: 2 omega0 gamma M0.
double tune_xt(double gamma, double m0, double omega0);

/// Series capacitor that leaves reactance `x_t` on a coil of inductance `l` at omega0.
double series_capacitance(double l, double omega0, double x_t);

/// The common gamma if Gamma = gamma M holds for one scalar (within `rel_tol`).
/// Returns 0 when every M_i and Gamma_i is zero; nullopt for a true vector.
std::optional<double> scalar_gamma(const CouplingSet& couplings, double rel_tol = 1e-9);

/// Common M0 when the channels agree within `rel_tol`; throws ModelDomainError otherwise.
double uniform_m0(const CouplingSet& couplings, double rel_tol = 1e-6);

/// Closed-form currents of the lossless, tuned, scalar-gamma system.
/// Throws ModelDomainError outside that domain.
PhasorSolution analytic_currents(const SystemConfig& config);

/// Closed-form output power and loss decomposition for a tuned scalar-gamma system.
/// Uses the mean Tx and Rp resistance.
PerformanceReport performance(const SystemConfig& config);

}  // namespace owpt
