#include "owpt/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "owpt/circuit.hpp"

namespace owpt {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Verdict make(std::string name, bool passed, std::string detail) {
  return Verdict{std::move(name), true, passed, std::move(detail)};
}

Verdict not_applicable(std::string name, std::string why) {
  return Verdict{std::move(name), false, false, std::move(why)};
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

std::vector<std::size_t> circular_local_minima(std::span<const double> values) {
  std::vector<std::size_t> out;
  const std::size_t n = values.size();
  if (n < 3) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] < prev && values[i] < next) out.push_back(i);
  }
  return out;
}

std::vector<const SweepRecord*> revolution(const SweepResult& result) {
  const auto& r = result.records;
  if (r.size() < 4) return {};
  const double span = r.back().angle_deg - r.front().angle_deg;
  if (std::abs(span - 360.0) > 1e-9) return {};
  std::vector<const SweepRecord*> out;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) out.push_back(&r[i]);
  return out;
}

std::optional<std::size_t> revolution_shift(const SweepResult& result, double shift_deg) {
  const auto rev = revolution(result);
  if (rev.empty()) return std::nullopt;
  const double step = 360.0 / static_cast<double>(rev.size());
  for (std::size_t i = 1; i < rev.size(); ++i) {
    if (std::abs(rev[i]->angle_deg - rev[i - 1]->angle_deg - step) > 1e-9) return std::nullopt;
  }
  const double k = shift_deg / step;
  if (std::abs(k - std::round(k)) > 1e-9) return std::nullopt;
  return static_cast<std::size_t>(std::llround(k)) % rev.size();
}

std::vector<Verdict> verify_sweep(const SweepResult& result) {
  using namespace reference;
  std::vector<Verdict> v;
  const auto& recs = result.records;

  const auto failed = std::count_if(recs.begin(), recs.end(), [](const auto& r) { return !r.ok(); });
  v.push_back(make("every angle solved", failed == 0 && !recs.empty(),
                   std::to_string(failed) + " failed of " + std::to_string(recs.size())));

  {
    double worst = 0.0;
    for (double m0 : result.cluster.m0) worst = std::max(worst, std::abs(m0 - kM0) / kM0);
    v.push_back(make("M0 within 15 % of 3.1 uH", worst <= kM0Tolerance,
                     "worst deviation " + fmt(worst * 100.0) + " %"));
    const double cross = result.cluster.max_cross_channel();
    const double m0_min = *std::min_element(result.cluster.m0.begin(), result.cluster.m0.end());
    v.push_back(make("cross-channel coupling below M0/50", cross * kCrossRatio <= m0_min,
                     "max " + fmt(cross * 1e9) + " nH"));
  }

  v.push_back(make("gamma within [0.60, 0.80]",
                   result.gamma_min >= kGammaLow && result.gamma_max <= kGammaHigh,
                   fmt(result.gamma_min) + " .. " + fmt(result.gamma_max)));
  v.push_back(make("X_t(auto) within [14, 19] ohm",
                   result.x_t_auto >= kXtAutoLow && result.x_t_auto <= kXtAutoHigh,
                   fmt(result.x_t_auto) + " ohm"));

  std::vector<const SweepRecord*> ok;
  for (const auto& r : recs) {
    if (r.ok()) ok.push_back(&r);
  }
  if (ok.empty()) {
    v.push_back(not_applicable("efficiency", "no successful records"));
    return v;
  }

  {
    double lo = 1.0;
    double sum = 0.0;
    for (const auto* r : ok) {
      lo = std::min(lo, r->eta);
      sum += r->eta;
    }
    const double mean = sum / static_cast<double>(ok.size());
    v.push_back(make("eta >= 0.88 at every angle", lo >= kEtaFloor, "min " + fmt(lo)));
    v.push_back(make("mean eta within [0.88, 0.97]", mean >= kEtaFloor && mean <= kEtaMeanHigh,
                     "mean " + fmt(mean)));
  }

  {
    double worst = 0.0;
    for (const auto* r : ok) {
      const auto& s = r->solution;
      worst = std::max(worst, rel_diff(s.p_in, s.p_out + s.p_loss_tx + s.p_loss_rp + s.p_loss_rx));
    }
    v.push_back(make("energy balance within 1e-9", worst <= 1e-9, "worst " + fmt(worst)));
  }

  {
    double overlay = 0.0;
    double ratio_lo = std::numeric_limits<double>::infinity();
    double ratio_hi = 0.0;
    double nulling = 0.0;
    double floor_err = 0.0;
    const double floor = -result.v_s / (result.omega0 * result.m0_mean);
    for (const auto* r : ok) {
      const SystemConfig cfg = lossless_tuned_config(result, *r);
      const PhasorSolution sol = solve_full(cfg);
      const double analytic =
          std::pow(r->m_sum_abs / result.m0_mean, 2) * result.v_s * result.v_s / result.r_load;
      overlay = std::max(overlay, rel_diff(analytic, sol.p_out));
      const double ratio = sol.p_out / (r->m_sum_abs * r->m_sum_abs);
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      for (std::size_t c = 0; c < 3; ++c) {
        floor_err = std::max(floor_err, rel_diff(sol.i_rp[c].imag(), floor));
        if (gamma_defined(r->m, c, result.dead_band)) {
          const Complex zin = cfg.v_s / sol.i_tx[c];
          nulling = std::max(nulling, std::abs(zin.imag()) / std::abs(zin.real()));
        }
      }
    }
    v.push_back(make("lossless Pout matches the M_sum closed form (1e-6)", overlay <= 1e-6,
                     "worst " + fmt(overlay)));
    const double spread = (ratio_hi - ratio_lo) / ratio_hi;
    v.push_back(make("lossless Pout / Msum^2 constant (1e-6)", spread <= 1e-6,
                     "spread " + fmt(spread)));
    v.push_back(make("tuned input reactance nulled (1e-9 of R_in)", nulling <= 1e-9,
                     "worst " + fmt(nulling)));
    v.push_back(make("Rp reactive current floor (1e-9)", floor_err <= 1e-9,
                     "worst " + fmt(floor_err)));
  }

  const auto rev = revolution(result);
  const bool rev_ok = !rev.empty() && std::all_of(rev.begin(), rev.end(), [](auto* r) { return r->ok(); });
  if (!rev_ok) {
    v.push_back(not_applicable("six Pout dips per revolution", "sweep is not one full revolution"));
  } else {
    std::vector<double> p;
    for (const auto* r : rev) p.push_back(r->p_out);
    const auto minima = circular_local_minima(p);
    std::string where;
    for (auto i : minima) where += fmt(rev[i]->angle_deg) + " ";
    v.push_back(make("six Pout dips per revolution",
                     static_cast<int>(minima.size()) == kPowerDips,
                     std::to_string(minima.size()) + " at " + where));
  }

  const auto shift = revolution_shift(result, 120.0);
  if (!rev_ok || !shift) {
    v.push_back(not_applicable("Pout 120 deg symmetry (1 %)", "grid does not divide 120 deg"));
  } else {
    double worst = 0.0;
    for (std::size_t i = 0; i < rev.size(); ++i) {
      worst = std::max(worst, rel_diff(rev[i]->p_out, rev[(i + *shift) % rev.size()]->p_out));
    }
    v.push_back(make("Pout 120 deg symmetry (1 %)", worst <= 0.01, "worst " + fmt(worst)));
  }
  return v;
}

bool all_passed(const std::vector<Verdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return !v.applicable || v.passed; });
}

}  // namespace owpt
