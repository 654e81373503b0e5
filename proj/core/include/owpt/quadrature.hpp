#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace owpt {

/// Controls for the adaptive product Gauss-Legendre integrator.
struct QuadratureSpec {
  double rel_tol = 1e-8;       ///< target relative error of the total
  int max_subdivisions = 20000;
  int order = 8;               ///< Gauss-Legendre points per axis on each panel
  int initial_grid = 2;        ///< panels per axis before adaptation starts

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error
  double l1 = 0.0;     ///< integral of |f|, the round-off scale
  int subdivisions = 0;
  std::size_t evaluations = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(int order);
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Box {
  double x0, x1, y0, y1;
};

/// Batch integrand: fill `out[i * ys.size() + j]` with f(xs[i], ys[j]).
using GridIntegrand =
    std::function<void(std::span<const double> xs, std::span<const double> ys, std::span<double> out)>;

/// Globally adaptive 2-D integration.
///
/// Every panel carries its own order-n product estimate and the sum of its four
/// quadrants; their difference is the panel's error estimate. The panel with the
/// largest estimate is split until
///   error <= max(rel_tol * |value|, 64 eps * l1)
/// where the second term is the round-off floor for integrals that cancel to zero.
/// Throws ConvergenceError when max_subdivisions is exhausted.
QuadratureResult integrate_2d(const GridIntegrand& f, const Box& domain, const QuadratureSpec& spec);

}  // namespace owpt
