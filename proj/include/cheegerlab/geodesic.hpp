#pragma once

#include "cheegerlab/curvature.hpp"

namespace cheegerlab {

struct PathSample {
  double t;
  Point p;
  VectorXd v;
};

/// Fixed-step RK4 integration of the geodesic equation
///   x'' = -Γ(x)(x', x'),
/// switching charts when the path drifts toward a chart boundary.
/// Requires steps >= 100 * time and a nonzero initial velocity.
/// Raises ChartExhausted when the path leaves the atlas.
std::vector<PathSample> geodesic(const MetricField& g, const Point& p,
                                 const VectorXd& v, double time, int steps,
                                 const DerivativeScheme& scheme);

/// Max relative drift of the metric speed |γ'|_g along a path.
double speed_drift(const MetricField& g, const std::vector<PathSample>& path);

/// Launches the geodesic with initial velocity v (which the caller
/// constructed orthogonal to the orbit) and returns the maximal normalized
/// inner product |<γ'(t), e>_g| / (|γ'| |e|) over the path and over the
/// orbit-tangent basis vectors e supplied by `orbit_basis`.
double transnormality_check(
    const MetricField& g,
    const std::function<std::vector<VectorXd>(const Point&)>& orbit_basis,
    const Point& p, const VectorXd& v, double time, int steps,
    const DerivativeScheme& scheme);

}  // namespace cheegerlab
