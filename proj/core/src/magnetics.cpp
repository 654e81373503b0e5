#include "owpt/magnetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "owpt/error.hpp"
#include "owpt/units.hpp"

namespace owpt {

namespace {

constexpr double kMinFilamentGap = 1e-6;
constexpr int kDistanceSamples = 180;

double point_circle_distance(const Vec3& p, const FilamentLoop& loop) {
  const Vec3 d = p - loop.pose().center();
  const double h = d.dot(loop.pose().normal());
  const double rho = (d - h * loop.pose().normal()).norm();
  return std::hypot(h, rho - loop.radius());
}

struct SampleTable {
  std::array<double, kDistanceSamples> c;
  std::array<double, kDistanceSamples> s;
  SampleTable() {
    for (int k = 0; k < kDistanceSamples; ++k) {
      c[k] = std::cos(2.0 * kPi * k / kDistanceSamples);
      s[k] = std::sin(2.0 * kPi * k / kDistanceSamples);
    }
  }
};

// min over t of dist(b(t), circle a): sampled, then golden-section polished.
double one_sided_distance(const FilamentLoop& a, const FilamentLoop& b) {
  static const SampleTable table;
  const double step = 2.0 * kPi / kDistanceSamples;
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int k = 0; k < kDistanceSamples; ++k) {
    const double t = k * step;
    const double d = point_circle_distance(b.point(table.c[k], table.s[k]), a);
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_t - step;
  double hi = best_t + step;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = point_circle_distance(b.point(x1), a);
  double f2 = point_circle_distance(b.point(x2), a);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = point_circle_distance(b.point(x1), a);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = point_circle_distance(b.point(x2), a);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace

double min_filament_distance(const FilamentLoop& a, const FilamentLoop& b) {
  return std::min(one_sided_distance(a, b), one_sided_distance(b, a));
}

namespace {

bool coincident(const FilamentLoop& a, const FilamentLoop& b) {
  const double r = std::max(a.radius(), b.radius());
  return (a.pose().center() - b.pose().center()).norm() <= kMinFilamentGap &&
         std::abs(a.radius() - b.radius()) <= kMinFilamentGap &&
         a.pose().normal().cross(b.pose().normal()).norm() * r <= kMinFilamentGap;
}

}  // namespace

QuadratureResult loop_mutual_detailed(const FilamentLoop& a, const FilamentLoop& b,
                                      const QuadratureSpec& spec, Crossing crossing) {
  if (crossing == Crossing::allow ? coincident(a, b)
                                  : min_filament_distance(a, b) <= kMinFilamentGap) {
    throw SingularGeometry("filament loops intersect or coincide");
  }

  // Structure-of-arrays node buffers so the inner loop vectorises.
  std::array<std::vector<double>, 6> na;  // px py pz tx ty tz
  std::array<std::vector<double>, 6> nb;
  const auto fill = [](const FilamentLoop& loop, std::span<const double> ts,
                       std::array<std::vector<double>, 6>& n) {
    for (auto& v : n) v.resize(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      Vec3 p;
      Vec3 t;
      loop.sample(ts[k], p, t);
      for (int c = 0; c < 3; ++c) {
        n[c][k] = p[c];
        n[3 + c][k] = t[c];
      }
    }
  };
  const GridIntegrand integrand = [&](std::span<const double> xs, std::span<const double> ys,
                                      std::span<double> out) {
    fill(a, xs, na);
    fill(b, ys, nb);
    const std::size_t ny = ys.size();
    const double* bx = nb[0].data();
    const double* by = nb[1].data();
    const double* bz = nb[2].data();
    const double* btx = nb[3].data();
    const double* bty = nb[4].data();
    const double* btz = nb[5].data();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double ax = na[0][i], ay = na[1][i], az = na[2][i];
      const double atx = na[3][i], aty = na[4][i], atz = na[5][i];
      double* row = out.data() + i * ny;
      for (std::size_t j = 0; j < ny; ++j) {
        const double dx = ax - bx[j], dy = ay - by[j], dz = az - bz[j];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        const double dot = atx * btx[j] + aty * bty[j] + atz * btz[j];
        // A node landing exactly on a crossing is a measure-zero point; drop it.
        row[j] = r > 0.0 ? dot / r : 0.0;
      }
    }
  };

  QuadratureResult r = integrate_2d(integrand, Box{0.0, 2.0 * kPi, 0.0, 2.0 * kPi}, spec);
  constexpr double scale = kMu0 / (4.0 * kPi);
  r.value *= scale;
  r.error *= scale;
  r.l1 *= scale;
  return r;
}

double loop_mutual(const FilamentLoop& a, const FilamentLoop& b, const QuadratureSpec& spec,
                   Crossing crossing) {
  return loop_mutual_detailed(a, b, spec, crossing).value;
}

double coil_mutual(const Coil& a, const Coil& b, const QuadratureSpec& spec, Crossing crossing) {
  double total = 0.0;
  for (const auto& la : a.loops()) {
    for (const auto& lb : b.loops()) {
      total += loop_mutual(la, lb, spec, crossing);
    }
  }
  return total;
}

double maxwell_coaxial(double r1, double r2, double gap) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(gap > 0.0)) {
    throw InvalidGeometry("coaxial radii and gap must be positive");
  }
  const double rr = std::sqrt(r1 * r2);
  const double sum = r1 + r2;
  const double k2 = 4.0 * r1 * r2 / (sum * sum + gap * gap);
  if (k2 >= 0.5) {
    const double k = std::sqrt(k2);
    const double kk = std::comp_ellint_1(k);
    const double ek = std::comp_ellint_2(k);
    return kMu0 * rr * ((2.0 / k - k) * kk - (2.0 / k) * ek);
  }
  // 2F1(3/2, 3/2; 3; k^2); term ratio (n + 3/2)^2 / ((n + 3)(n + 1)) k^2.
  double term = 1.0;
  double series = 1.0;
  for (int n = 0; n < 200; ++n) {
    const double nn = static_cast<double>(n);
    term *= (nn + 1.5) * (nn + 1.5) / ((nn + 3.0) * (nn + 1.0)) * k2;
    series += term;
    if (term < 1e-17 * series) {
      break;
    }
  }
  return kMu0 * kPi * rr * k2 * std::sqrt(k2) / 16.0 * series;
}

CouplingSet CouplingSet::from_raw(const std::array<double, 3>& m0, const std::array<double, 3>& m,
                                  const std::array<double, 3>& tx_rx) {
  CouplingSet c;
  c.m0 = m0;
  c.m = m;
  for (std::size_t i = 0; i < 3; ++i) {
    if (m[i] != 0.0) {
      c.gamma[i] = tx_rx[i] / m[i];
      c.gamma_m[i] = c.gamma[i] * m[i];
    } else {
      c.gamma[i] = std::numeric_limits<double>::quiet_NaN();
      c.gamma_m[i] = tx_rx[i];
    }
  }
  return c;
}

CouplingSet CouplingSet::uniform(double m0, const std::array<double, 3>& m, double gamma) {
  CouplingSet c;
  c.m0 = {m0, m0, m0};
  c.m = m;
  for (std::size_t i = 0; i < 3; ++i) {
    c.gamma[i] = gamma;
    c.gamma_m[i] = gamma * m[i];
  }
  return c;
}

void CouplingSet::validate() const {
  for (double v : m0) {
    if (!(v > 0.0)) {
      throw InvalidGeometry("M0 must be positive on every channel");
    }
  }
  if (cross) {
    const double scale = cross->cwiseAbs().maxCoeff();
    if ((*cross - cross->transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw InvalidGeometry("coupling matrix is not symmetric");
    }
  }
}

double CouplingSet::m_sum_abs() const {
  return std::abs(m[0]) + std::abs(m[1]) + std::abs(m[2]);
}

double ClusterCouplings::max_cross_channel() const {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i % 3 != j % 3) {
        worst = std::max(worst, std::abs(block(i, j)));
      }
    }
  }
  return worst;
}

ClusterCouplings cluster_couplings(const SystemLayout& layout, const QuadratureSpec& spec) {
  std::array<const Coil*, 6> coils{&layout.tx[0], &layout.tx[1], &layout.tx[2],
                                   &layout.rp[0], &layout.rp[1], &layout.rp[2]};
  ClusterCouplings out;
  for (int i = 0; i < 6; ++i) {
    out.block(i, i) = coils[i]->self_inductance();
    for (int j = i + 1; j < 6; ++j) {
      // Same-family coils of different channels share a winding sphere and cross.
      const Crossing crossing = (i / 3 == j / 3) ? Crossing::allow : Crossing::reject;
      const double mij = coil_mutual(*coils[i], *coils[j], spec, crossing);
      out.block(i, j) = mij;
      out.block(j, i) = mij;
    }
  }
  for (int c = 0; c < 3; ++c) {
    out.m0[c] = out.block(tx_index(c), rp_index(c));
  }
  return out;
}

CouplingSet coupling_set(const SystemLayout& layout, const ClusterCouplings& cluster,
                         const QuadratureSpec& spec, bool include_cross) {
  std::array<double, 3> m{};
  std::array<double, 3> tx_rx{};
  for (std::size_t c = 0; c < 3; ++c) {
    m[c] = coil_mutual(layout.rp[c], layout.rx, spec);
    tx_rx[c] = coil_mutual(layout.tx[c], layout.rx, spec);
  }
  CouplingSet set = CouplingSet::from_raw(cluster.m0, m, tx_rx);
  if (include_cross) {
    InductanceMatrix full = InductanceMatrix::Zero();
    full.topLeftCorner<6, 6>() = cluster.block;
    for (int c = 0; c < 3; ++c) {
      full(tx_index(c), kRxIndex) = full(kRxIndex, tx_index(c)) = set.gamma_m[c];
      full(rp_index(c), kRxIndex) = full(kRxIndex, rp_index(c)) = set.m[c];
    }
    full(kRxIndex, kRxIndex) = layout.rx.self_inductance();
    set.cross = full;
  }
  set.validate();
  return set;
}

CouplingSet coupling_set(const SystemLayout& layout, const QuadratureSpec& spec,
                         bool include_cross) {
  return coupling_set(layout, cluster_couplings(layout, spec), spec, include_cross);
}

}  // namespace owpt
