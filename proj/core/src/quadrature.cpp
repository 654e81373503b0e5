#include "owpt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "owpt/error.hpp"
#include "owpt/units.hpp"

namespace owpt {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
    throw InvalidConfig("quadrature rel_tol must be in (0, 1)");
  }
  if (max_subdivisions < 0) {
    throw InvalidConfig("quadrature max_subdivisions must be non-negative");
  }
  if (order < 2 || order > 64) {
    throw InvalidConfig("quadrature order must be in [2, 64]");
  }
  if (initial_grid < 1 || initial_grid > 64) {
    throw InvalidConfig("quadrature initial_grid must be in [1, 64]");
  }
}

GaussLegendreRule::GaussLegendreRule(int order) {
  if (order < 1) {
    throw InvalidConfig("Gauss-Legendre order must be positive");
  }
  const auto n = static_cast<std::size_t>(order);
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n from the Tricomi initial guess; nodes are symmetric.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
  }
}

namespace {

struct PanelSum {
  double value;
  double l1;
};

class PanelEvaluator {
 public:
  PanelEvaluator(const GridIntegrand& f, int order)
      : f_(f), rule_(order), xs_(rule_.nodes.size()), ys_(rule_.nodes.size()),
        values_(rule_.nodes.size() * rule_.nodes.size()) {}

  PanelSum operator()(const Box& b) {
    const std::size_t n = rule_.nodes.size();
    const double hx = 0.5 * (b.x1 - b.x0);
    const double hy = 0.5 * (b.y1 - b.y0);
    const double cx = 0.5 * (b.x1 + b.x0);
    const double cy = 0.5 * (b.y1 + b.y0);
    for (std::size_t i = 0; i < n; ++i) {
      xs_[i] = cx + hx * rule_.nodes[i];
      ys_[i] = cy + hy * rule_.nodes[i];
    }
    f_(xs_, ys_, values_);
    evaluations_ += n * n;
    double sum = 0.0;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      double abs_row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = values_[i * n + j];
        row += rule_.weights[j] * v;
        abs_row += rule_.weights[j] * std::abs(v);
      }
      sum += rule_.weights[i] * row;
      abs_sum += rule_.weights[i] * abs_row;
    }
    return {sum * hx * hy, abs_sum * hx * hy};
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const GridIntegrand& f_;
  GaussLegendreRule rule_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> values_;
  std::size_t evaluations_ = 0;
};

std::array<Box, 4> quadrants(const Box& b) {
  const double xm = 0.5 * (b.x0 + b.x1);
  const double ym = 0.5 * (b.y0 + b.y1);
  return {Box{b.x0, xm, b.y0, ym}, Box{xm, b.x1, b.y0, ym}, Box{b.x0, xm, ym, b.y1},
          Box{xm, b.x1, ym, b.y1}};
}

struct Panel {
  Box box;
  std::array<double, 4> child_values;
  double value;  // sum of child values
  double l1;
  double error;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

Panel refine(PanelEvaluator& eval, const Box& box, double coarse) {
  Panel p{box, {}, 0.0, 0.0, 0.0};
  const auto quads = quadrants(box);
  for (std::size_t k = 0; k < 4; ++k) {
    const PanelSum s = eval(quads[k]);
    p.child_values[k] = s.value;
    p.value += s.value;
    p.l1 += s.l1;
  }
  p.error = std::abs(coarse - p.value);
  return p;
}

}  // namespace

QuadratureResult integrate_2d(const GridIntegrand& f, const Box& domain, const QuadratureSpec& spec) {
  spec.validate();
  PanelEvaluator eval(f, spec.order);
  std::vector<Panel> heap;
  const ByError by_error;

  const int g = spec.initial_grid;
  const double dx = (domain.x1 - domain.x0) / g;
  const double dy = (domain.y1 - domain.y0) / g;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const Box box{domain.x0 + i * dx, i + 1 == g ? domain.x1 : domain.x0 + (i + 1) * dx,
                    domain.y0 + j * dy, j + 1 == g ? domain.y1 : domain.y0 + (j + 1) * dy};
      heap.push_back(refine(eval, box, eval(box).value));
    }
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&heap]() {
    QuadratureResult r;
    for (const auto& p : heap) {
      r.value += p.value;
      r.error += p.error;
      r.l1 += p.l1;
    }
    return r;
  };

  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  {
    const auto t = totals();
    value = t.value;
    error = t.error;
    l1 = t.l1;
  }

  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  int subdivisions = 0;
  while (error > std::max(spec.rel_tol * std::abs(value), kRoundoff * l1)) {
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge after " << subdivisions
          << " subdivisions: estimate " << value << ", error bound " << error;
      throw ConvergenceError(msg.str(), value, error);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    value -= worst.value;
    error -= worst.error;
    l1 -= worst.l1;
    const auto quads = quadrants(worst.box);
    for (std::size_t k = 0; k < 4; ++k) {
      Panel child = refine(eval, quads[k], worst.child_values[k]);
      value += child.value;
      error += child.error;
      l1 += child.l1;
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    ++subdivisions;
    // Running sums drift; resynchronise occasionally.
    if (subdivisions % 256 == 0) {
      const auto t = totals();
      value = t.value;
      error = t.error;
      l1 = t.l1;
    }
  }

  QuadratureResult result = totals();
  result.subdivisions = subdivisions;
  result.evaluations = eval.evaluations();
  return result;
}

}  // namespace owpt
