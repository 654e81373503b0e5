#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "owpt/circuit.hpp"
#include "owpt/geometry.hpp"
#include "owpt/units.hpp"

namespace owpt::testing {

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 2.0 * M_PI);
  return Eigen::AngleAxisd(a(rng), random_unit(rng)).toRotationMatrix();
}

/// Two loops with well separated centres (>= 2.5 max radius), random orientations.
inline std::pair<FilamentLoop, FilamentLoop> random_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.05, 0.2);
  const double ra = r(rng);
  const double rb = r(rng);
  std::uniform_real_distribution<double> d(2.5, 5.0);
  const Vec3 offset = random_unit(rng) * d(rng) * std::max(ra, rb);
  return {FilamentLoop(Pose(Vec3::Zero(), random_unit(rng)), ra),
          FilamentLoop(Pose(offset, random_unit(rng)), rb)};
}

/// Random channel couplings with |M_i| in [0.2, 2] uH and either sign.
inline std::array<double, 3> random_m(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.2e-6, 2.0e-6);
  std::bernoulli_distribution neg(0.5);
  std::array<double, 3> m{};
  for (double& v : m) v = (neg(rng) ? -1.0 : 1.0) * mag(rng);
  return m;
}

/// Lossless, tuned, scalar-gamma system around the prototype's operating point.
inline SystemConfig random_tuned_lossless(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> m0(2e-6, 4e-6);
  std::uniform_real_distribution<double> gamma(0.5, 0.9);
  std::uniform_real_distribution<double> rl(5.0, 50.0);
  std::uniform_real_distribution<double> vs(1.0, 20.0);
  SystemConfig c;
  c.omega0 = angular_frequency(592.6e3);
  c.v_s = vs(rng);
  c.r_load = rl(rng);
  const double g = gamma(rng);
  const double m0v = m0(rng);
  c.couplings = CouplingSet::uniform(m0v, random_m(rng), g);
  c.x_t = tune_xt(g, m0v, c.omega0);
  return c;
}

/// Prototype-like lossy system (measured coil resistances).
inline SystemConfig prototype_lossy(const std::array<double, 3>& m, double gamma = 0.72) {
  SystemConfig c;
  c.omega0 = angular_frequency(592.6e3);
  c.v_s = source_rms_from_dc(10.0);
  c.r_tx = {0.049, 0.047, 0.039};
  c.r_rp = {0.055, 0.055, 0.037};
  c.r_rx = 0.469;
  c.r_load = 20.0;
  c.couplings = CouplingSet::uniform(3.178e-6, m, gamma);
  c.x_t = tune_xt(gamma, 3.178e-6, c.omega0);
  return c;
}

}  // namespace owpt::testing
