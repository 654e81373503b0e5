#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace owpt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Position and orientation of a planar object. The normal is always unit length.
class Pose {
 public:
  /// Origin, normal +z.
  Pose();
  /// Throws InvalidGeometry if `normal` is zero or non-finite.
  Pose(const Vec3& center, const Vec3& normal);

  const Vec3& center() const noexcept { return center_; }
  const Vec3& normal() const noexcept { return normal_; }

  /// Orthonormal in-plane pair (u, v) with u x v = normal.
  ///
  /// u is the direction of normal x z (or +x when the normal is vertical), so the
  /// basis rotates with the pose under rotations about the vertical axis.
  std::pair<Vec3, Vec3> in_plane_basis() const;

  /// Applies x -> rotation * x + translation.
  Pose transformed(const Mat3& rotation, const Vec3& translation) const;

 private:
  Vec3 center_;
  Vec3 normal_;
};

/// Circular filament. Current circulates right-handed about the pose normal.
class FilamentLoop {
 public:
  FilamentLoop(const Pose& pose, double radius);

  const Pose& pose() const noexcept { return pose_; }
  double radius() const noexcept { return radius_; }

  Vec3 point(double t) const;
  /// d(point)/dt.
  Vec3 tangent(double t) const;
  /// point(t) given cos t and sin t.
  Vec3 point(double cos_t, double sin_t) const;
  /// point(t) and tangent(t) from a single sin/cos evaluation.
  void sample(double t, Vec3& point, Vec3& tangent) const;

  FilamentLoop transformed(const Mat3& rotation, const Vec3& translation) const;
  FilamentLoop scaled(double factor) const;
  FilamentLoop flipped() const;

 private:
  Pose pose_;
  double radius_;
  Vec3 u_;
  Vec3 v_;
  double sense_ = 1.0;  ///< -1 after flipped(): u_ x v_ is then -normal
};

/// Measured lumped parameters of one coil.
struct CoilElectrical {
  double resistance = 0.0;      ///< series resistance [ohm]
  double inductance = 1e-6;     ///< measured self-inductance [H]
  double quality_factor = 0.0;  ///< informational
};

/// Multi-turn coil: a stack of near-identical circular turns plus measured parameters.
/// Self-inductance is never computed from the geometry.
class Coil {
 public:
  Coil(std::string label, Pose axis, std::vector<FilamentLoop> loops,
       const CoilElectrical& electrical);

  const std::string& label() const noexcept { return label_; }
  const Pose& axis() const noexcept { return axis_; }
  const std::vector<FilamentLoop>& loops() const noexcept { return loops_; }
  double series_resistance() const noexcept { return electrical_.resistance; }
  double self_inductance() const noexcept { return electrical_.inductance; }
  double quality_factor() const noexcept { return electrical_.quality_factor; }
  const CoilElectrical& electrical() const noexcept { return electrical_; }

  Coil transformed(const Mat3& rotation, const Vec3& translation) const;

 private:
  std::string label_;
  Pose axis_;
  std::vector<FilamentLoop> loops_;
  CoilElectrical electrical_;
};

/// `turns` coaxial circles spaced `pitch` apart along the pose normal, centred on the pose.
Coil make_helical_coil(double radius, int turns, double pitch, const Pose& pose,
                       double resistance, double inductance, std::string label = "coil",
                       double quality_factor = 0.0);

/// Geometry and measured parameters of the three-channel system.
/// Defaults reproduce the prototype: 260 mm / 300 mm Tx / Rp with 3 turns, 300 mm Rx
/// with 10 turns, and the measured coil table.
struct LayoutParams {
  double tx_radius = 0.130;
  int tx_turns = 3;
  double rp_radius = 0.150;
  int rp_turns = 3;
  double rx_radius = 0.150;
  int rx_turns = 10;
  double pitch = 4.0e-3;
  /// Rp centre offset from its Tx centre along the shared axis.
  double tx_rp_axial_offset = 0.0;
  /// Extra rotation of the whole Tx/Rp cluster about the horizontal y axis.
  double triad_tilt = 0.0;

  std::array<CoilElectrical, 3> tx{{{0.049, 6.41e-6, 490.0},
                                    {0.047, 6.33e-6, 505.0},
                                    {0.039, 6.43e-6, 620.0}}};
  std::array<CoilElectrical, 3> rp{{{0.055, 7.39e-6, 510.0},
                                    {0.055, 7.45e-6, 512.0},
                                    {0.037, 7.53e-6, 765.0}}};
  CoilElectrical rx{0.469, 75.93e-6, 610.0};

  void validate() const;
};

/// Three orthogonal Tx-Rp pairs at the origin and a receiver on a horizontal circle.
struct SystemLayout {
  std::array<Coil, 3> tx;
  std::array<Coil, 3> rp;
  Coil rx;
  double rx_angle;     ///< radians, 0 = facing Tx2
  double rx_distance;  ///< metres from the cluster centre
  LayoutParams params;
};

/// Polar angle of each cluster axis from vertical, arccos(1/sqrt 3).
double triad_inclination();

/// Unit normals of Tx1..Tx3 (shared by Rp1..Rp3).
std::array<Vec3, 3> triad_normals(double tilt = 0.0);

/// Pose of the receiver at `angle` on the horizontal circle, normal facing the centre.
Pose receiver_pose(double angle, double distance);

SystemLayout paper_layout(double rx_angle, double rx_distance,
                          const LayoutParams& params = LayoutParams{});

/// Same layout with the receiver moved to `new_angle`; the cluster is untouched.
SystemLayout rotate_rx(const SystemLayout& layout, double new_angle);

}  // namespace owpt
