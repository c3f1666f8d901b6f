#pragma once

#include "cheegerlab/metric.hpp"

namespace cheegerlab {

/// Second fundamental form of the submanifold presented by the embedding
/// `embed` inside (ambient, g_ambient): the g-normal component of the
/// ambient covariant derivative of the chart extension of Y along X.
/// X, Y are tangent vectors in the submanifold chart at z; the result is an
/// ambient vector at embed(z).
VectorXd second_fundamental_form(const SmoothMap& embed,
                                 const MetricField& g_ambient, const Point& z,
                                 const VectorXd& X, const VectorXd& Y,
                                 const DerivativeScheme& scheme);

}  // namespace cheegerlab
