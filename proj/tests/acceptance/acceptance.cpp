// Acceptance checks, one PASS/FAIL line per criterion.
// Usage: owpt_acceptance [--criterion N]   (exit status 1 if any selected check fails)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "owpt/circuit.hpp"
#include "owpt/magnetics.hpp"
#include "owpt/polarity.hpp"
#include "owpt/scenario.hpp"
#include "owpt/sweep.hpp"
#include "owpt/units.hpp"

using namespace owpt;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vec3(n(rng), n(rng), n(rng)).normalized();
}

const Scenario& prototype() {
  static const Scenario s = load_scenario(std::string(OWPT_SCENARIO_DIR) + "/prototype.scenario");
  return s;
}

const SweepResult& sweep() {
  static const SweepResult r = run_sweep(prototype());
  return r;
}

bool outside_dead_band(const SweepRecord& r, int c) { return gamma_defined(r.m, c, sweep().dead_band); }

SystemConfig random_lossless(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.2e-6, 2.0e-6);
  std::bernoulli_distribution neg(0.5);
  std::uniform_real_distribution<double> m0(2e-6, 4e-6);
  std::uniform_real_distribution<double> g(0.5, 0.9);
  std::uniform_real_distribution<double> rl(5.0, 50.0);
  std::array<double, 3> m{};
  for (double& v : m) v = (neg(rng) ? -1.0 : 1.0) * mag(rng);
  SystemConfig c;
  c.omega0 = angular_frequency(592.6e3);
  c.v_s = source_rms_from_dc(10.0);
  c.r_load = rl(rng);
  const double gamma = g(rng);
  const double m0v = m0(rng);
  c.couplings = CouplingSet::uniform(m0v, m, gamma);
  c.x_t = tune_xt(gamma, m0v, c.omega0);
  return c;
}

Outcome c1_magnetics_oracle() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> r(0.02, 0.3);
  std::uniform_real_distribution<double> g(0.005, 0.5);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double r1 = r(rng);
    const double r2 = r(rng);
    const double gap = g(rng);
    const Vec3 axis = random_unit(rng);
    const Vec3 c = random_unit(rng) * 0.5;
    const double num = loop_mutual(FilamentLoop(Pose(c, axis), r1), FilamentLoop(Pose(c + gap * axis, axis), r2));
    worst = std::max(worst, rel(num, maxwell_coaxial(r1, r2, gap)));
  }
  const double ref = maxwell_coaxial(0.1, 0.1, 0.05);
  const double perp = std::abs(loop_mutual(FilamentLoop(Pose(Vec3::Zero(), Vec3::UnitZ()), 0.1),
                                           FilamentLoop(Pose(Vec3::Zero(), Vec3(1, 1, 0)), 0.1 * 0.8)));
  return {worst <= 1e-6 && perp < 1e-12 * ref,
          fmt("worst coaxial rel err %.2e over 100 cases; perpendicular |M|/ref %.2e", worst, perp / ref)};
}

Outcome c2_m0() {
  const auto cluster = cluster_couplings(paper_layout(0.0, prototype().rx_distance, prototype().layout), prototype().quadrature);
  double worst = 0.0;
  for (double m0 : cluster.m0) worst = std::max(worst, std::abs(m0 - 3.1e-6) / 3.1e-6);
  const double cross = cluster.max_cross_channel();
  const double m0_min = *std::min_element(cluster.m0.begin(), cluster.m0.end());
  return {worst <= 0.15 && 50.0 * cross <= m0_min,
          fmt("M0 %.4f uH (dev %.2f %%); max cross %.3e nH", cluster.m0[0] * 1e6, worst * 100.0, cross * 1e9)};
}

Outcome c3_gamma_band() {
  double lo = INFINITY;
  double hi = -INFINITY;
  int skipped = 0;
  for (const auto& r : sweep().records) {
    for (int c = 0; c < 3; ++c) {
      if (!outside_dead_band(r, c)) {
        ++skipped;
        continue;
      }
      lo = std::min(lo, r.gamma[c]);
      hi = std::max(hi, r.gamma[c]);
    }
  }
  return {lo >= 0.60 && hi <= 0.80,
          fmt("gamma %.4f .. %.4f; %g zero-crossing channels excluded (gamma = 0/0)", lo, hi, skipped)};
}

Outcome c4_xt() {
  const double w = angular_frequency(592.6e3);
  const double lo = tune_xt(0.66, 3.1e-6, w);
  const double hi = tune_xt(0.75, 3.1e-6, w);
  const bool ok = lo >= 15.2 - 1e-3 && lo <= 17.3 + 1e-3 && hi >= 15.2 - 1e-3 && hi <= 17.3 + 1e-3;
  return {ok, fmt("X_t(0.66) = %.4f ohm, X_t(0.75) = %.4f ohm; band [15.2, 17.3] +/- 1e-3", lo, hi)};
}

Outcome c5_closed_form() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto c = random_lossless(rng);
    const auto a = solve_full(c).currents();
    const auto b = analytic_currents(c).currents();
    for (int i = 0; i < kBranches; ++i) {
      worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(a[i]), std::abs(b[i])));
    }
  }
  return {worst <= 1e-9, fmt("worst current rel diff %.2e over 1000 sets", worst)};
}

Outcome c6_nulling() {
  double worst = 0.0;
  int n = 0;
  for (const auto& r : sweep().records) {
    const auto cfg = lossless_tuned_config(sweep(), r);
    const auto s = solve_full(cfg);
    for (int c = 0; c < 3; ++c) {
      if (!outside_dead_band(r, c)) continue;
      const Complex z = cfg.v_s / s.i_tx[c];
      worst = std::max(worst, std::abs(z.imag()) / std::abs(z.real()));
      ++n;
    }
  }
  return {worst <= 1e-9, fmt("worst |X_in|/R_in %.2e over %g channel-angles", worst, n)};
}

std::vector<std::size_t> circular_minima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] < v[(i + n - 1) % n] && v[i] < v[(i + 1) % n]) out.push_back(i);
  }
  return out;
}

Outcome c7_msum_squared() {
  double lo = INFINITY;
  double hi = 0.0;
  std::vector<double> trace;
  const auto& recs = sweep().records;
  for (const auto& r : recs) {
    const double p = solve_full(lossless_tuned_config(sweep(), r)).p_out;
    const double k = p / (r.m_sum_abs * r.m_sum_abs);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  // One revolution: drop the 360 deg sample that repeats 0 deg.
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) trace.push_back(recs[i].p_out);
  const auto minima = circular_minima(trace);
  const double spread = (hi - lo) / hi;
  return {spread <= 1e-6 && minima.size() == 6,
          fmt("lossless Pout/Msum^2 spread %.2e; %g lossy Pout minima per revolution", spread,
              static_cast<double>(minima.size()))};
}

Outcome c8_efficiency() {
  double lo = 1.0;
  double sum = 0.0;
  for (const auto& r : sweep().records) {
    lo = std::min(lo, r.eta);
    sum += r.eta;
  }
  const double mean = sum / static_cast<double>(sweep().records.size());
  return {lo >= 0.88 && mean >= 0.88 && mean <= 0.97,
          fmt("eta min %.4f, mean %.4f at X_t = %.2f ohm", lo, mean, sweep().x_t_used)};
}

Outcome c9_controller() {
  std::mt19937_64 rng(109);
  int worst_iters = 0;
  int misses = 0;
  for (int k = 0; k < 500; ++k) {
    auto c = random_lossless(rng);
    const auto res = run_controller(c);
    worst_iters = std::max(worst_iters, res.state.iterations);
    const double got = solve_full(res.config).p_out;
    double best = 0.0;
    for (int p = 0; p < 8; ++p) {
      c.polarity = Polarity({p & 1 ? -1 : 1, p & 2 ? -1 : 1, p & 4 ? -1 : 1});
      best = std::max(best, solve_full(c).p_out);
    }
    if (!res.state.converged || got < best * (1.0 - 1e-12)) ++misses;
  }
  return {misses == 0 && worst_iters <= 4,
          fmt("%g of 500 sets below the 8-pattern optimum; max %g iterations", misses, worst_iters)};
}

Outcome c10_energy() {
  double worst = 0.0;
  for (const auto& r : sweep().records) {
    const auto& s = r.solution;
    worst = std::max(worst, rel(s.p_in, s.p_out + s.p_loss_tx + s.p_loss_rp + s.p_loss_rx));
  }
  return {worst <= 1e-9, fmt("worst relative imbalance %.2e", worst)};
}

Outcome c11_symmetry() {
  const auto& recs = sweep().records;
  const std::size_t n = recs.size() - 1;  // one revolution
  const double step = recs[1].angle_deg - recs[0].angle_deg;
  const auto shift = static_cast<std::size_t>(std::lround(120.0 / step));
  double p_worst = 0.0;
  double peak = 0.0;
  double i_worst = 0.0;
  double i_worst_pointwise = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (int c = 0; c < 3; ++c) peak = std::max(peak, std::abs(recs[k].i_tx()[c]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = recs[k];
    const auto& b = recs[(k + shift) % n];
    p_worst = std::max(p_worst, rel(a.p_out, b.p_out));
    // Moving the receiver by +120 deg hands channel c's role to channel c + 1.
    for (int c = 0; c < 3; ++c) {
      const double ia = std::abs(a.i_tx()[c]);
      const double ib = std::abs(b.i_tx()[(c + 1) % 3]);
      i_worst = std::max(i_worst, std::abs(ia - ib) / peak);
      i_worst_pointwise = std::max(i_worst_pointwise, rel(ia, ib));
    }
  }
  return {p_worst <= 0.01 && i_worst <= 0.02,
          fmt("Pout worst %.2e; Tx traces worst %.2e of peak (pointwise %.2e)", p_worst, i_worst,
              i_worst_pointwise)};
}

Outcome c12_rp_floor() {
  double worst = 0.0;
  for (const auto& r : sweep().records) {
    const auto cfg = lossless_tuned_config(sweep(), r);
    const auto s = solve_full(cfg);
    const double floor = -cfg.v_s / (cfg.omega0 * cfg.couplings.m0[0]);
    for (const auto& i : s.i_rp) worst = std::max(worst, rel(i.imag(), floor));
  }
  return {worst <= 1e-9, fmt("worst rel deviation %.2e from -V_s/(w0 M0)", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"magnetics oracle", c1_magnetics_oracle},
      {"M0 reproduction", c2_m0},
      {"gamma band", c3_gamma_band},
      {"X_t reproduction", c4_xt},
      {"closed-form equivalence", c5_closed_form},
      {"reactance nulling", c6_nulling},
      {"Pout proportional to Msum^2", c7_msum_squared},
      {"efficiency", c8_efficiency},
      {"controller optimality", c9_controller},
      {"energy balance", c10_energy},
      {"120 deg symmetry", c11_symmetry},
      {"Rp current floor", c12_rp_floor},
  };

  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only && (*only < 1 || *only > static_cast<int>(criteria.size()))) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
    return 2;
  }

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only && *only != id) continue;
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first,
                o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
