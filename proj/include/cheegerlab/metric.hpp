#pragma once

#include "cheegerlab/derivatives.hpp"

namespace cheegerlab {

/// A smooth assignment point -> symmetric positive-definite matrix in the
/// chart basis of the queried point. eval() symmetrizes and enforces the
/// positive-definiteness floor (eigenvalues > 1e-10).
struct MetricField {
  AtlasPtr atlas;
  std::function<MatrixXd(const Point&)> eval_raw;

  MatrixXd eval(const Point& p) const {
    MatrixXd g = symmetrize(eval_raw(p));
    if (min_eigenvalue(g) <= 1e-10)
      raise(ErrorKind::SingularMetric, "riemann",
            atlas->name() + ": metric not positive definite",
            min_eigenvalue(g));
    return g;
  }

  /// Metric as a fixed-chart matrix function (for FD differentiation).
  MatrixFn chart_fn(int chart) const {
    auto e = *this;
    return [e, chart](const VectorXd& x) {
      if (!e.atlas->in_domain(chart, x))
        raise(ErrorKind::StencilEscape, "riemann",
              e.atlas->name() + ": metric stencil left the chart");
      return e.eval(Point{chart, x});
    };
  }

  double inner(const Point& p, const VectorXd& u, const VectorXd& v) const {
    return (u.transpose() * eval(p) * v)(0);
  }
  double norm(const Point& p, const VectorXd& u) const {
    return std::sqrt(std::max(0.0, inner(p, u, u)));
  }
};

/// Constant-matrix metric (same components in every chart).
MetricField constant_metric(AtlasPtr atlas, const MatrixXd& g);

/// Round metric on a stereographic sphere atlas of radius r:
/// 4 r^2 / (1 + |u|^2)^2 * Id in both charts.
MetricField round_sphere_metric(AtlasPtr sphere, double radius = 1.0);

/// Block product metric on a product atlas from per-factor metrics.
MetricField product_metric(AtlasPtr product, std::vector<MetricField> parts);

/// Pullback of g under f (uses FD Jacobians of f).
MetricField pullback_metric(const SmoothMap& f, const MetricField& g,
                            const DerivativeScheme& scheme);

/// Base metric induced by a submersion f from the total metric, evaluating
/// the pushforward at section(p) in the fiber over p:
///   g_base(p) = (J G^{-1} J^T)^{-1} with J = D f at section(p).
MetricField induced_base_metric(const SmoothMap& f, const MetricField& total,
                                std::function<Point(const Point&)> section,
                                const DerivativeScheme& scheme);

/// A 2-plane at a common base point. Construction validates linear
/// independence: Gram determinant in `g` must exceed 1e-12.
struct PlaneSection {
  Point base;
  VectorXd u, v;
};

PlaneSection make_plane(const MetricField& g, const Point& base,
                        const VectorXd& u, const VectorXd& v);

}  // namespace cheegerlab
