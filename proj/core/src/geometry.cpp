#include "owpt/geometry.hpp"

#include <cmath>

#include "owpt/error.hpp"
#include "owpt/units.hpp"

namespace owpt {

namespace {

constexpr double kOrthogonalityTol = 1e-9;
constexpr double kRadiusSpread = 0.01;

Mat3 rotation_z(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
}

Mat3 rotation_y(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitY()).toRotationMatrix();
}

}  // namespace

Pose::Pose() : center_(Vec3::Zero()), normal_(Vec3::UnitZ()) {}

Pose::Pose(const Vec3& center, const Vec3& normal) : center_(center) {
  const double n = normal.norm();
  if (!std::isfinite(n) || n == 0.0 || !center.allFinite()) {
    throw InvalidGeometry("pose normal must be a finite non-zero vector");
  }
  normal_ = normal / n;
}

std::pair<Vec3, Vec3> Pose::in_plane_basis() const {
  Vec3 u = normal_.cross(Vec3::UnitZ());
  const double un = u.norm();
  if (un < 1e-12) {
    u = Vec3::UnitX();
  } else {
    u /= un;
  }
  // Make u exactly orthogonal to the normal before building v.
  u = (u - u.dot(normal_) * normal_).normalized();
  Vec3 v = normal_.cross(u);
  return {u, v};
}

Pose Pose::transformed(const Mat3& rotation, const Vec3& translation) const {
  return Pose(rotation * center_ + translation, rotation * normal_);
}

FilamentLoop::FilamentLoop(const Pose& pose, double radius) : pose_(pose), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidGeometry("filament radius must be positive");
  }
  std::tie(u_, v_) = pose_.in_plane_basis();
}

Vec3 FilamentLoop::point(double t) const {
  return pose_.center() + radius_ * (std::cos(t) * u_ + std::sin(t) * v_);
}

Vec3 FilamentLoop::tangent(double t) const {
  return (sense_ * radius_) * (-std::sin(t) * u_ + std::cos(t) * v_);
}

Vec3 FilamentLoop::point(double cos_t, double sin_t) const {
  return pose_.center() + radius_ * (cos_t * u_ + sin_t * v_);
}

void FilamentLoop::sample(double t, Vec3& point, Vec3& tangent) const {
  const double c = std::cos(t);
  const double s = std::sin(t);
  point = pose_.center() + radius_ * (c * u_ + s * v_);
  tangent = (sense_ * radius_) * (-s * u_ + c * v_);
}

FilamentLoop FilamentLoop::transformed(const Mat3& rotation, const Vec3& translation) const {
  return FilamentLoop(pose_.transformed(rotation, translation), radius_);
}

FilamentLoop FilamentLoop::scaled(double factor) const {
  return FilamentLoop(Pose(factor * pose_.center(), pose_.normal()), factor * radius_);
}

FilamentLoop FilamentLoop::flipped() const {
  // Same points, reversed tangent: the Neumann integrand changes sign exactly.
  FilamentLoop out = *this;
  out.pose_ = Pose(pose_.center(), -pose_.normal());
  out.sense_ = -sense_;
  return out;
}

Coil::Coil(std::string label, Pose axis, std::vector<FilamentLoop> loops,
           const CoilElectrical& electrical)
    : label_(std::move(label)),
      axis_(std::move(axis)),
      loops_(std::move(loops)),
      electrical_(electrical) {
  if (loops_.empty()) {
    throw InvalidGeometry("coil '" + label_ + "' has no turns");
  }
  double rmin = loops_.front().radius();
  double rmax = rmin;
  for (const auto& loop : loops_) {
    rmin = std::min(rmin, loop.radius());
    rmax = std::max(rmax, loop.radius());
  }
  if (rmax > rmin * (1.0 + kRadiusSpread)) {
    throw InvalidGeometry("coil '" + label_ + "' turn radii differ by more than 1 %");
  }
  if (!(electrical_.resistance >= 0.0)) {
    throw InvalidGeometry("coil '" + label_ + "' resistance must be non-negative");
  }
  if (!(electrical_.inductance > 0.0)) {
    throw InvalidGeometry("coil '" + label_ + "' self-inductance must be positive");
  }
}

Coil Coil::transformed(const Mat3& rotation, const Vec3& translation) const {
  std::vector<FilamentLoop> moved;
  moved.reserve(loops_.size());
  for (const auto& loop : loops_) {
    moved.push_back(loop.transformed(rotation, translation));
  }
  return Coil(label_, axis_.transformed(rotation, translation), std::move(moved), electrical_);
}

Coil make_helical_coil(double radius, int turns, double pitch, const Pose& pose,
                       double resistance, double inductance, std::string label,
                       double quality_factor) {
  if (!(radius > 0.0)) {
    throw InvalidGeometry("coil radius must be positive");
  }
  if (turns < 1) {
    throw InvalidGeometry("coil needs at least one turn");
  }
  if (!(pitch >= 0.0)) {
    throw InvalidGeometry("coil pitch must be non-negative");
  }
  std::vector<FilamentLoop> loops;
  loops.reserve(static_cast<std::size_t>(turns));
  const double mid = 0.5 * static_cast<double>(turns - 1);
  for (int k = 0; k < turns; ++k) {
    const double offset = (static_cast<double>(k) - mid) * pitch;
    loops.emplace_back(Pose(pose.center() + offset * pose.normal(), pose.normal()), radius);
  }
  return Coil(std::move(label), pose, std::move(loops),
              CoilElectrical{resistance, inductance, quality_factor});
}

void LayoutParams::validate() const {
  if (!(tx_radius > 0.0 && rp_radius > 0.0 && rx_radius > 0.0)) {
    throw InvalidGeometry("coil radii must be positive");
  }
  if (tx_turns < 1 || rp_turns < 1 || rx_turns < 1) {
    throw InvalidGeometry("coils need at least one turn");
  }
  if (!(pitch >= 0.0)) {
    throw InvalidGeometry("pitch must be non-negative");
  }
  if (!std::isfinite(tx_rp_axial_offset) || !std::isfinite(triad_tilt)) {
    throw InvalidGeometry("offsets must be finite");
  }
  auto check = [](const CoilElectrical& e) {
    if (!(e.resistance >= 0.0) || !std::isfinite(e.resistance)) {
      throw InvalidGeometry("coil resistance must be finite and non-negative");
    }
    if (!(e.inductance > 0.0) || !std::isfinite(e.inductance)) {
      throw InvalidGeometry("coil self-inductance must be positive");
    }
  };
  for (const auto& e : tx) check(e);
  for (const auto& e : rp) check(e);
  check(rx);
}

double triad_inclination() { return std::acos(1.0 / std::sqrt(3.0)); }

std::array<Vec3, 3> triad_normals(double tilt) {
  const double alpha = triad_inclination();
  const Vec3 n2(std::sin(alpha), 0.0, std::cos(alpha));
  const Mat3 tilt_rot = rotation_y(tilt);
  // Tx1 trails and Tx3 leads Tx2 by 120 deg in azimuth, so increasing receiver
  // angle visits Tx1 -> Tx2 -> Tx3.
  return {tilt_rot * (rotation_z(-2.0 * kPi / 3.0) * n2), tilt_rot * n2,
          tilt_rot * (rotation_z(2.0 * kPi / 3.0) * n2)};
}

Pose receiver_pose(double angle, double distance) {
  const Vec3 radial(std::cos(angle), std::sin(angle), 0.0);
  return Pose(distance * radial, -radial);
}

namespace {

Coil make_receiver(const LayoutParams& p, double angle, double distance) {
  return make_helical_coil(p.rx_radius, p.rx_turns, p.pitch, receiver_pose(angle, distance),
                           p.rx.resistance, p.rx.inductance, "Rx", p.rx.quality_factor);
}

}  // namespace

SystemLayout paper_layout(double rx_angle, double rx_distance, const LayoutParams& params) {
  if (!(rx_distance > 0.0) || !std::isfinite(rx_distance)) {
    throw InvalidGeometry("receiver distance must be positive");
  }
  params.validate();
  const auto normals = triad_normals(params.triad_tilt);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(normals[i].dot(normals[j])) > kOrthogonalityTol) {
        throw InvalidGeometry("transmitter axes are not orthogonal");
      }
    }
  }

  auto tx_coil = [&](int i) {
    return make_helical_coil(params.tx_radius, params.tx_turns, params.pitch,
                             Pose(Vec3::Zero(), normals[i]), params.tx[i].resistance,
                             params.tx[i].inductance, "Tx" + std::to_string(i + 1),
                             params.tx[i].quality_factor);
  };
  auto rp_coil = [&](int i) {
    return make_helical_coil(params.rp_radius, params.rp_turns, params.pitch,
                             Pose(params.tx_rp_axial_offset * normals[i], normals[i]),
                             params.rp[i].resistance, params.rp[i].inductance,
                             "Rp" + std::to_string(i + 1), params.rp[i].quality_factor);
  };

  return SystemLayout{{tx_coil(0), tx_coil(1), tx_coil(2)},
                      {rp_coil(0), rp_coil(1), rp_coil(2)},
                      make_receiver(params, rx_angle, rx_distance),
                      rx_angle,
                      rx_distance,
                      params};
}

SystemLayout rotate_rx(const SystemLayout& layout, double new_angle) {
  SystemLayout out = layout;
  out.rx = make_receiver(layout.params, new_angle, layout.rx_distance);
  out.rx_angle = new_angle;
  return out;
}

}  // namespace owpt
