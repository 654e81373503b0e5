#include "owpt/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "owpt/error.hpp"
#include "owpt/units.hpp"
#include "owpt/verification.hpp"

namespace owpt {

bool gamma_defined(const std::array<double, 3>& m, std::size_t i, double dead_band) {
  const double peak = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
  return peak > 0.0 && m[i] != 0.0 && std::abs(m[i]) >= dead_band * peak;
}

SystemConfig circuit_config(const Scenario& scenario, const CouplingSet& couplings, double x_t) {
  SystemConfig cfg;
  cfg.omega0 = scenario.omega0();
  cfg.v_s = scenario.source_rms();
  for (std::size_t c = 0; c < 3; ++c) {
    cfg.r_tx[c] = scenario.layout.tx[c].resistance;
    cfg.r_rp[c] = scenario.layout.rp[c].resistance;
  }
  cfg.r_rx = scenario.layout.rx.resistance;
  cfg.r_load = scenario.r_load;
  cfg.x_t = x_t;
  cfg.polarity = scenario.initial_polarity;
  cfg.couplings = couplings;
  return cfg;
}

namespace {

struct CouplingSample {
  double angle_deg;
  CouplingSet couplings;
  std::string error;
};

void solve_record(const Scenario& scenario, const CouplingSet& couplings, double x_t,
                  const Polarity& start, SweepRecord& rec) {
  SystemConfig cfg = circuit_config(scenario, couplings, x_t);
  cfg.polarity = start;
  if (scenario.controller_enabled) {
    const ControllerResult ctl = run_controller(cfg, scenario.controller);
    cfg = ctl.config;
    cfg.polarity = ctl.state.signs;
    rec.controller_iterations = ctl.state.iterations;
    if (!ctl.state.converged) {
      std::ostringstream msg;
      msg << (ctl.state.oscillated ? "controller oscillated;" : "controller hit max_iters;")
          << " visited";
      for (const auto& p : ctl.state.visited) {
        msg << " (" << p[0] << " " << p[1] << " " << p[2] << ")";
      }
      rec.error = msg.str();
    }
  }
  rec.signs = cfg.polarity;
  rec.solution = solve_full(cfg);
  rec.p_out = rec.solution.p_out;
  rec.eta = rec.solution.efficiency();
}

}  // namespace

SweepResult run_sweep(const Scenario& scenario) {
  scenario.validate();
  const auto angles = scenario.sweep.angles_deg();
  const SystemLayout base = paper_layout(deg_to_rad(angles.front()), scenario.rx_distance,
                                         scenario.layout);

  SweepResult result;
  result.omega0 = scenario.omega0();
  result.v_s = scenario.source_rms();
  result.r_load = scenario.r_load;
  result.dead_band = scenario.controller.dead_band;
  result.cluster = cluster_couplings(base, scenario.quadrature);
  result.m0_mean = (result.cluster.m0[0] + result.cluster.m0[1] + result.cluster.m0[2]) / 3.0;

  // Couplings first: automatic X_t needs gamma over the whole sweep.
  std::vector<CouplingSample> samples;
  samples.reserve(angles.size());
  for (double a : angles) {
    CouplingSample s{a, {}, {}};
    try {
      s.couplings = coupling_set(rotate_rx(base, deg_to_rad(a)), result.cluster,
                                 scenario.quadrature, scenario.include_cross);
    } catch (const Error& e) {
      s.error = e.what();
    }
    samples.push_back(std::move(s));
  }

  double gsum = 0.0;
  std::size_t gcount = 0;
  result.gamma_min = std::numeric_limits<double>::infinity();
  result.gamma_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    if (!s.error.empty()) continue;
    for (std::size_t c = 0; c < 3; ++c) {
      if (gamma_defined(s.couplings.m, c, result.dead_band)) {
        const double g = s.couplings.gamma[c];
        gsum += g;
        ++gcount;
        result.gamma_min = std::min(result.gamma_min, g);
        result.gamma_max = std::max(result.gamma_max, g);
      }
    }
  }
  result.gamma_mean = gcount ? gsum / static_cast<double>(gcount) : 0.0;
  if (!gcount) {
    result.gamma_min = result.gamma_max = std::numeric_limits<double>::quiet_NaN();
  }
  result.x_t_auto = tune_xt(result.gamma_mean, result.m0_mean, result.omega0);
  result.x_t_used = scenario.x_t.value_or(result.x_t_auto);

  result.records.reserve(samples.size());
  Polarity seed = scenario.initial_polarity;
  for (const auto& s : samples) {
    SweepRecord rec;
    rec.angle_deg = s.angle_deg;
    rec.signs = scenario.initial_polarity;
    if (!s.error.empty()) {
      rec.m.fill(std::numeric_limits<double>::quiet_NaN());
      rec.gamma = rec.gamma_m = rec.m;
      rec.m_sum_abs = rec.p_out = rec.eta = std::numeric_limits<double>::quiet_NaN();
      rec.error = s.error;
      result.records.push_back(std::move(rec));
      continue;
    }
    rec.m = s.couplings.m;
    rec.gamma = s.couplings.gamma;
    rec.gamma_m = s.couplings.gamma_m;
    rec.m_sum_abs = s.couplings.m_sum_abs();
    try {
      solve_record(scenario, s.couplings, result.x_t_used, seed, rec);
      if (scenario.warm_start && rec.ok()) seed = rec.signs;
    } catch (const Error& e) {
      rec.error = e.what();
      rec.p_out = rec.eta = std::numeric_limits<double>::quiet_NaN();
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

SystemConfig lossless_tuned_config(const SweepResult& result, const SweepRecord& record) {
  SystemConfig cfg;
  cfg.omega0 = result.omega0;
  cfg.v_s = result.v_s;
  cfg.r_load = result.r_load;
  cfg.couplings = CouplingSet::uniform(result.m0_mean, record.m, result.gamma_mean);
  cfg.x_t = tune_xt(result.gamma_mean, result.m0_mean, result.omega0);
  cfg.polarity = record.signs;
  return cfg;
}

SweepSummary summarize(const SweepResult& result) {
  if (result.records.empty()) {
    throw InvalidConfig("cannot summarize an empty sweep");
  }
  SweepSummary s;
  s.records = result.records.size();
  s.eta_min = s.p_out_min = s.m_sum_min = std::numeric_limits<double>::infinity();
  s.eta_max = s.p_out_max = s.m_sum_max = -std::numeric_limits<double>::infinity();
  double eta_sum = 0.0;
  std::size_t ok = 0;
  for (const auto& r : result.records) {
    if (!r.ok()) {
      ++s.failures;
      continue;
    }
    ++ok;
    eta_sum += r.eta;
    s.eta_min = std::min(s.eta_min, r.eta);
    s.eta_max = std::max(s.eta_max, r.eta);
    s.p_out_min = std::min(s.p_out_min, r.p_out);
    s.p_out_max = std::max(s.p_out_max, r.p_out);
    s.m_sum_min = std::min(s.m_sum_min, r.m_sum_abs);
    s.m_sum_max = std::max(s.m_sum_max, r.m_sum_abs);
  }
  if (ok == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.eta_min = s.eta_max = s.eta_mean = s.p_out_min = s.p_out_max = nan;
    s.m_sum_min = s.m_sum_max = s.p_out_ratio = s.p_out_ripple = nan;
  } else {
    s.eta_mean = eta_sum / static_cast<double>(ok);
    s.p_out_ratio = s.p_out_max > 0.0 ? s.p_out_min / s.p_out_max : 1.0;
    s.p_out_ripple = s.p_out_max > 0.0 ? (s.p_out_max - s.p_out_min) / s.p_out_max : 0.0;
  }
  s.gamma_min = result.gamma_min;
  s.gamma_max = result.gamma_max;
  s.x_t_auto = result.x_t_auto;
  s.x_t_used = result.x_t_used;
  s.m0 = result.cluster.m0;
  s.max_cross_channel = result.cluster.max_cross_channel();
  return s;
}

std::string render_summary(const SweepResult& result) {
  const SweepSummary s = summarize(result);
  std::ostringstream out;
  out << std::setprecision(6);
  out << "records            " << s.records << " (" << s.failures << " failed)\n";
  out << "M0 [uH]            " << s.m0[0] * 1e6 << " " << s.m0[1] * 1e6 << " " << s.m0[2] * 1e6
      << "\n";
  out << "max cross [nH]     " << s.max_cross_channel * 1e9 << "\n";
  out << "gamma range        " << s.gamma_min << " .. " << s.gamma_max << "\n";
  out << "X_t auto [ohm]     " << s.x_t_auto << "\n";
  out << "X_t used [ohm]     " << s.x_t_used << "\n";
  out << "Msum range [uH]    " << s.m_sum_min * 1e6 << " .. " << s.m_sum_max * 1e6 << "\n";
  out << "Pout range [W]     " << s.p_out_min << " .. " << s.p_out_max << "  (min/max "
      << s.p_out_ratio << ", ripple " << s.p_out_ripple << ")\n";
  out << "eta min/mean/max   " << s.eta_min << " / " << s.eta_mean << " / " << s.eta_max << "\n";
  out << "\nchecks\n";
  for (const auto& v : verify_sweep(result)) {
    out << "  [" << (!v.applicable ? "n/a " : v.passed ? "pass" : "FAIL") << "] " << v.name;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << "\n";
  }
  return out.str();
}

}  // namespace owpt
