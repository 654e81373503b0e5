#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "owpt/geometry.hpp"
#include "owpt/quadrature.hpp"

namespace owpt {

/// Branch order used by every 7x7 quantity: Tx1 Tx2 Tx3 Rp1 Rp2 Rp3 Rx.
inline constexpr int kBranches = 7;
inline constexpr int kRxIndex = 6;
inline constexpr int tx_index(int channel) { return channel; }
inline constexpr int rp_index(int channel) { return 3 + channel; }

using InductanceMatrix = Eigen::Matrix<double, kBranches, kBranches>;

/// Inductive coupling state of the three-channel system.
///
/// `m` holds the Rp-to-Rx couplings, `gamma_m` the Tx-to-Rx couplings and `gamma`
/// their ratio. For m[i] != 0, gamma_m[i] is stored as gamma[i] * m[i].
struct CouplingSet {
  std::array<double, 3> m0{};
  std::array<double, 3> m{};
  std::array<double, 3> gamma_m{};
  std::array<double, 3> gamma{};
  /// All pairwise couplings, measured self-inductances on the diagonal.
  std::optional<InductanceMatrix> cross;

  /// Builds a set from raw Rp-to-Rx and Tx-to-Rx couplings.
  static CouplingSet from_raw(const std::array<double, 3>& m0, const std::array<double, 3>& m,
                              const std::array<double, 3>& tx_rx);

  /// Idealised set with one M0 and one gamma for every channel (Gamma = gamma * M).
  static CouplingSet uniform(double m0, const std::array<double, 3>& m, double gamma);

  /// Throws InvalidGeometry when m0 <= 0 or `cross` is not symmetric.
  void validate() const;

  double m_sum() const { return m[0] + m[1] + m[2]; }
  double m_sum_abs() const;
};

/// `allow` is for windings that pass over each other on a shared former: the
/// integrand's 1/r point singularity at a crossing is integrable. Coincident
/// loops are rejected either way.
enum class Crossing { reject, allow };

/// Signed mutual inductance of two filaments by the Neumann double line integral.
///
/// Positive when current circulating right-handed about `a`'s normal produces flux
/// through `b` along `b`'s normal. Throws SingularGeometry when the filaments come
/// within 1 um of each other and ConvergenceError when the quadrature budget runs out.
double loop_mutual(const FilamentLoop& a, const FilamentLoop& b,
                   const QuadratureSpec& spec = QuadratureSpec{},
                   Crossing crossing = Crossing::reject);

/// Same as loop_mutual, also returning the quadrature diagnostics.
QuadratureResult loop_mutual_detailed(const FilamentLoop& a, const FilamentLoop& b,
                                      const QuadratureSpec& spec = QuadratureSpec{},
                                      Crossing crossing = Crossing::reject);

/// Sum of loop_mutual over every turn pair.
double coil_mutual(const Coil& a, const Coil& b, const QuadratureSpec& spec = QuadratureSpec{},
                   Crossing crossing = Crossing::reject);

/// Smallest distance between points of the two circles.
double min_filament_distance(const FilamentLoop& a, const FilamentLoop& b);

/// Closed-form mutual inductance of two coaxial circles (Maxwell).
///
/// Uses the complete elliptic integral form for k^2 >= 0.5 and the equivalent
/// hypergeometric series (mu0 pi sqrt(r1 r2) k^3 / 16) 2F1(3/2, 3/2; 3; k^2) below,
/// where the elliptic form cancels catastrophically.
double maxwell_coaxial(double r1, double r2, double gap);

/// Couplings that do not depend on the receiver: M0 per channel and the Tx/Rp block.
struct ClusterCouplings {
  std::array<double, 3> m0{};
  /// 6x6 block over Tx1..Tx3, Rp1..Rp3 (diagonal = measured self-inductance).
  Eigen::Matrix<double, 6, 6> block = Eigen::Matrix<double, 6, 6>::Zero();

  /// Largest |coupling| between coils of different channels.
  double max_cross_channel() const;
};

ClusterCouplings cluster_couplings(const SystemLayout& layout,
                                   const QuadratureSpec& spec = QuadratureSpec{});

/// Full coupling set for a layout, reusing precomputed cluster couplings.
CouplingSet coupling_set(const SystemLayout& layout, const ClusterCouplings& cluster,
                         const QuadratureSpec& spec, bool include_cross);

CouplingSet coupling_set(const SystemLayout& layout,
                         const QuadratureSpec& spec = QuadratureSpec{},
                         bool include_cross = false);

}  // namespace owpt
