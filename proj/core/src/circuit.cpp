#include "owpt/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "owpt/error.hpp"

namespace owpt {

namespace {

constexpr double kMinRcond = 1e-14;
constexpr double kTuningTol = 1e-9;
const Complex kJ{0.0, 1.0};

double mean3(const std::array<double, 3>& v) { return (v[0] + v[1] + v[2]) / 3.0; }

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Shared preconditions of the closed-form routines; returns (M0, gamma).
std::pair<double, double> require_tuned_scalar_model(const SystemConfig& config) {
  if (!(config.r_load > 0.0)) {
    throw ModelDomainError("closed-form model needs a positive load resistance");
  }
  const double m0 = uniform_m0(config.couplings);
  const auto gamma = scalar_gamma(config.couplings);
  if (!gamma) {
    throw ModelDomainError(
        "closed-form model needs one gamma for all channels (Gamma = gamma M); use solve_full");
  }
  const bool any_coupling = std::any_of(config.couplings.m.begin(), config.couplings.m.end(),
                                        [](double v) { return v != 0.0; });
  if (any_coupling) {
    const double tuned = tune_xt(*gamma, m0, config.omega0);
    const double scale = std::max({std::abs(tuned), std::abs(config.x_t), 1e-300});
    if (std::abs(config.x_t - tuned) > kTuningTol * scale) {
      throw ModelDomainError("transmitter reactance is not tuned to 2 omega0 gamma M0");
    }
  }
  return {m0, *gamma};
}

}  // namespace

Polarity::Polarity(const std::array<int, 3>& signs) : signs_(signs) {
  for (int s : signs_) {
    if (s != 1 && s != -1) {
      throw InvalidConfig("polarity entries must be +1 or -1");
    }
  }
}

void SystemConfig::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw InvalidConfig("omega0 must be positive");
  }
  if (!std::isfinite(v_s)) {
    throw InvalidConfig("source voltage must be finite");
  }
  if (!(r_load >= 0.0)) {
    throw InvalidConfig("load resistance must be non-negative");
  }
  for (double r : r_tx) {
    if (!(r >= 0.0)) throw InvalidConfig("Tx resistance must be non-negative");
  }
  for (double r : r_rp) {
    if (!(r >= 0.0)) throw InvalidConfig("Rp resistance must be non-negative");
  }
  if (!(r_rx >= 0.0)) {
    throw InvalidConfig("Rx resistance must be non-negative");
  }
  if (!std::isfinite(x_t)) {
    throw InvalidConfig("x_t must be finite");
  }
  try {
    couplings.validate();
  } catch (const InvalidGeometry& e) {
    throw InvalidConfig(e.what());
  }
}

bool SystemConfig::lossless() const {
  auto zero = [](double r) { return r == 0.0; };
  return std::all_of(r_tx.begin(), r_tx.end(), zero) &&
         std::all_of(r_rp.begin(), r_rp.end(), zero) && r_rx == 0.0;
}

std::array<double, 3> SystemConfig::signed_m() const {
  return {polarity[0] * couplings.m[0], polarity[1] * couplings.m[1],
          polarity[2] * couplings.m[2]};
}

std::array<double, 3> SystemConfig::signed_gamma_m() const {
  return {polarity[0] * couplings.gamma_m[0], polarity[1] * couplings.gamma_m[1],
          polarity[2] * couplings.gamma_m[2]};
}

double SystemConfig::signed_m_sum() const {
  const auto m = signed_m();
  return m[0] + m[1] + m[2];
}

std::array<Complex, kBranches> PhasorSolution::currents() const {
  return {i_tx[0], i_tx[1], i_tx[2], i_rp[0], i_rp[1], i_rp[2], i_rx};
}

ImpedanceMatrix assemble_impedance(const SystemConfig& config) {
  config.validate();
  const auto& c = config.couplings;

  InductanceMatrix l = InductanceMatrix::Zero();
  if (c.cross) {
    l = *c.cross;
  } else {
    for (int ch = 0; ch < 3; ++ch) {
      l(tx_index(ch), rp_index(ch)) = l(rp_index(ch), tx_index(ch)) = c.m0[ch];
      l(rp_index(ch), kRxIndex) = l(kRxIndex, rp_index(ch)) = c.m[ch];
      l(tx_index(ch), kRxIndex) = l(kRxIndex, tx_index(ch)) = c.gamma_m[ch];
    }
  }

  // Inverting Tx terminals is the change of variables I_Tx,i, I_Rp,i -> -I_Tx,i, -I_Rp,i.
  std::array<double, kBranches> s{};
  for (int ch = 0; ch < 3; ++ch) {
    s[tx_index(ch)] = s[rp_index(ch)] = config.polarity[ch];
  }
  s[kRxIndex] = 1.0;

  ImpedanceMatrix z = ImpedanceMatrix::Zero();
  for (int i = 0; i < kBranches; ++i) {
    for (int j = 0; j < kBranches; ++j) {
      if (i != j) {
        z(i, j) = kJ * (config.omega0 * s[i] * s[j] * l(i, j));
      }
    }
  }
  for (int ch = 0; ch < 3; ++ch) {
    z(tx_index(ch), tx_index(ch)) = Complex(config.r_tx[ch], config.x_t);
    z(rp_index(ch), rp_index(ch)) = Complex(config.r_rp[ch], 0.0);
  }
  z(kRxIndex, kRxIndex) = Complex(config.r_rx + config.r_load, 0.0);
  return z;
}

PhasorSolution make_solution(const SystemConfig& config, const std::array<Complex, kBranches>& i) {
  PhasorSolution sol;
  for (int ch = 0; ch < 3; ++ch) {
    sol.i_tx[ch] = i[tx_index(ch)];
    sol.i_rp[ch] = i[rp_index(ch)];
    sol.p_in += std::real(config.v_s * std::conj(sol.i_tx[ch]));
    sol.p_loss_tx += std::norm(sol.i_tx[ch]) * config.r_tx[ch];
    sol.p_loss_rp += std::norm(sol.i_rp[ch]) * config.r_rp[ch];
  }
  sol.i_rx = i[kRxIndex];
  sol.p_out = std::norm(sol.i_rx) * config.r_load;
  sol.p_loss_rx = std::norm(sol.i_rx) * config.r_rx;
  return sol;
}

PhasorSolution solve_full(const SystemConfig& config) {
  const ImpedanceMatrix z = assemble_impedance(config);
  Eigen::PartialPivLU<ImpedanceMatrix> lu(z);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinRcond)) {
    throw SingularSystem("impedance matrix is singular (rcond " + std::to_string(rcond) + ")");
  }
  Eigen::Matrix<Complex, kBranches, 1> v = Eigen::Matrix<Complex, kBranches, 1>::Zero();
  for (int ch = 0; ch < 3; ++ch) {
    v(tx_index(ch)) = config.v_s;
  }
  const Eigen::Matrix<Complex, kBranches, 1> x = lu.solve(v);
  std::array<Complex, kBranches> currents{};
  for (int k = 0; k < kBranches; ++k) {
    currents[k] = x(k);
  }
  return make_solution(config, currents);
}

double tune_xt(double gamma, double m0, double omega0) { return 2.0 * omega0 * gamma * m0; }

double series_capacitance(double l, double omega0, double x_t) {
  const double reactance = omega0 * l - x_t;
  if (!(reactance > 0.0)) {
    throw InvalidConfig("coil reactance must exceed the residual reactance");
  }
  return 1.0 / (omega0 * reactance);
}

std::optional<double> scalar_gamma(const CouplingSet& couplings, double rel_tol) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t ch = 0; ch < 3; ++ch) {
    if (couplings.m[ch] == 0.0) {
      if (couplings.gamma_m[ch] != 0.0) {
        return std::nullopt;
      }
      continue;
    }
    any = true;
    lo = std::min(lo, couplings.gamma[ch]);
    hi = std::max(hi, couplings.gamma[ch]);
  }
  if (!any) {
    return 0.0;
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) ||
      hi - lo > rel_tol * std::max(std::abs(lo), std::abs(hi))) {
    return std::nullopt;
  }
  return 0.5 * (lo + hi);
}

double uniform_m0(const CouplingSet& couplings, double rel_tol) {
  const auto [lo, hi] = std::minmax({couplings.m0[0], couplings.m0[1], couplings.m0[2]});
  if (!(lo > 0.0)) {
    throw ModelDomainError("M0 must be positive");
  }
  if (hi - lo > rel_tol * hi) {
    throw ModelDomainError("closed-form model needs the same M0 on every channel");
  }
  return mean3(couplings.m0);
}

InputImpedance input_impedance(const SystemConfig& config) {
  config.validate();
  const double m0 = uniform_m0(config.couplings);
  const auto m = config.signed_m();
  const auto g = config.signed_gamma_m();
  const double m_sum = m[0] + m[1] + m[2];
  if (m_sum == 0.0 || std::any_of(m.begin(), m.end(), [](double v) { return v == 0.0; })) {
    throw UndefinedImpedance("input impedance is undefined when some M_i or M_sum is zero");
  }
  const double mm = dot3(m, m);
  const double gm = dot3(g, m);
  InputImpedance out;
  for (std::size_t ch = 0; ch < 3; ++ch) {
    const double denom = m_sum * m[ch];
    out.r_in[ch] = m0 * m0 * config.r_load / denom;
    out.x_in[ch] = (config.x_t * mm - 2.0 * config.omega0 * m0 * gm) / denom;
  }
  return out;
}

PhasorSolution analytic_currents(const SystemConfig& config) {
  config.validate();
  if (!config.lossless()) {
    throw ModelDomainError("closed-form currents assume zero parasitic resistance; use solve_full");
  }
  const auto [m0, gamma] = require_tuned_scalar_model(config);
  const auto m = config.signed_m();
  const double m_sum = m[0] + m[1] + m[2];
  const double drive = config.v_s / config.r_load;

  std::array<Complex, kBranches> i{};
  for (int ch = 0; ch < 3; ++ch) {
    const double tx = m_sum * m[ch] / (m0 * m0) * drive;
    i[tx_index(ch)] = tx;
    i[rp_index(ch)] = -kJ * (config.v_s / (config.omega0 * m0)) - gamma * tx;
  }
  i[kRxIndex] = -(m_sum / m0) * drive;
  return make_solution(config, i);
}

PerformanceReport performance(const SystemConfig& config) {
  config.validate();
  const auto [m0, gamma] = require_tuned_scalar_model(config);
  const auto m = config.signed_m();
  const double m_sum = m[0] + m[1] + m[2];
  const double mm = dot3(m, m);
  const double r_tx = mean3(config.r_tx);
  const double r_rp = mean3(config.r_rp);
  const double rl = config.r_load;

  PerformanceReport rep;
  rep.m_sum = m_sum;
  rep.xi_tx = mm / (m0 * m0) * (r_tx / rl);
  rep.xi_rx = config.r_rx / rl;
  rep.p_out = (m_sum / m0) * (m_sum / m0) * config.v_s * config.v_s / rl;
  try {
    const auto zin = input_impedance(config);
    rep.r_in = zin.r_in;
    rep.x_in = zin.x_in;
  } catch (const UndefinedImpedance&) {
    rep.r_in.fill(std::numeric_limits<double>::quiet_NaN());
    rep.x_in.fill(std::numeric_limits<double>::quiet_NaN());
  }
  if (m_sum == 0.0) {
    rep.degenerate = true;
    rep.xi_rp = std::numeric_limits<double>::infinity();
    rep.eta = 0.0;
    return rep;
  }
  const double w = config.omega0;
  rep.xi_rp = 3.0 * r_rp * rl / (w * w * m_sum * m_sum) + gamma * gamma * mm / (m0 * m0) * (r_rp / rl);
  rep.eta = 1.0 / (1.0 + rep.xi_tx + rep.xi_rp + rep.xi_rx);
  return rep;
}

}  // namespace owpt
