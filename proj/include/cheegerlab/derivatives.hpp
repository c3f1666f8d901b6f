#pragma once

#include "cheegerlab/linalg.hpp"
#include "cheegerlab/smooth_map.hpp"

namespace cheegerlab {

/// Central-difference scheme. `step` is relative to the coordinate magnitude
/// with an absolute floor of 1e-6.
struct DerivativeScheme {
  int stencil_order = 4;  // 2 or 4
  double step = 1e-4;

  double step_for(double coord) const {
    double h = step * std::max(1.0, std::abs(coord));
    return std::max(h, 1e-6);
  }
};

/// Coordinate function of f between fixed charts: evaluates f at chart-c
/// coordinates x and returns the image coordinates in chart `target_chart`.
/// Throws StencilEscape when x leaves the source chart domain.
VectorXd map_coords(const SmoothMap& f, int source_chart,
                    const VectorXd& x, int target_chart);

/// Jacobian of f at p (target dim x source dim) by central differences.
/// The point is moved to its preferred chart first; the image chart is fixed
/// to that of f(p).
MatrixXd jacobian(const SmoothMap& f, const Point& p,
                  const DerivativeScheme& scheme);

/// Same, but the image is expressed in a caller-chosen target chart.
MatrixXd jacobian_in_chart(const SmoothMap& f, const Point& p,
                           int target_chart, const DerivativeScheme& scheme);

/// Differentiates in exactly the charts given: source chart p.chart (no
/// preferred-chart switch), image chart `target_chart`. Used by metric
/// plumbing, where the basis must match the queried chart.
MatrixXd jacobian_fixed_charts(const SmoothMap& f, const Point& p,
                               int target_chart,
                               const DerivativeScheme& scheme);

/// Generic matrix-valued field on chart coordinates (fixed chart).
using MatrixFn = std::function<MatrixXd(const VectorXd&)>;

/// First partials of a matrix field at x: out[i] = d/dx_i F.
std::vector<MatrixXd> first_partials(const MatrixFn& F, const VectorXd& x,
                                     const DerivativeScheme& scheme);

/// Second partials of a matrix field: out[i][j] = d^2/dx_i dx_j F,
/// symmetrized in (i, j); raises NumericFailure if the two orders disagree
/// by more than 1e-8 relative to scale. Uses a step enlarged over the
/// first-derivative step to balance FD roundoff.
std::vector<std::vector<MatrixXd>> second_partials(
    const MatrixFn& F, const VectorXd& x, const DerivativeScheme& scheme);

/// Lie bracket [X, Y] at p, computed in p's preferred chart:
/// [X,Y]^k = X^j d_j Y^k - Y^j d_j X^k.
TangentVector lie_bracket(const VectorField& X, const VectorField& Y,
                          const Point& p, const DerivativeScheme& scheme);

}  // namespace cheegerlab
