#pragma once

#include "cheegerlab/metric.hpp"

namespace cheegerlab {

/// Vertical/horizontal splitting of v at z for the submersion f with total
/// metric g: v = vertical + horizontal, Df(vertical) = 0,
/// g(vertical, horizontal) = 0.
struct VHSplit {
  VectorXd vertical;
  VectorXd horizontal;
};

VHSplit vh_split(const SmoothMap& f, const MetricField& g_total, const Point& z,
                 const VectorXd& v, const DerivativeScheme& scheme);

/// Unique g-horizontal preimage at z of the base vector u (u in the chart of
/// f(z)).
VectorXd horizontal_lift_at(const SmoothMap& f, const MetricField& g_total,
                            const Point& z, const VectorXd& u,
                            const DerivativeScheme& scheme);

/// Basic horizontal extension: the vector field on the total space lifting
/// the constant base-chart field u (u expressed in the chart of f(z0)).
VectorField basic_horizontal_field(const SmoothMap& f, const MetricField& g_total,
                                   const Point& z0, const VectorXd& u,
                                   const DerivativeScheme& scheme);

/// O'Neill A-tensor A_X Y = (1/2) [X-ext, Y-ext]^vertical at z, for X, Y
/// horizontal at z, using basic horizontal extensions.
VectorXd a_tensor(const SmoothMap& f, const MetricField& g_total, const Point& z,
                  const VectorXd& X, const VectorXd& Y,
                  const DerivativeScheme& scheme);

/// O'Neill verification: K_base(u, v) vs K_total(lift u, lift v) + 3|A|^2,
/// unnormalized on both sides (the lifts are isometric).
struct ONeillReport {
  double k_base;
  double k_total;
  double a_norm_sq;  // |A_X Y|^2_g
  double residual;   // |k_base - k_total - 3 a_norm_sq|
};

ONeillReport oneill_check(const SmoothMap& f, const MetricField& g_total,
                          const MetricField& g_base, const Point& z,
                          const VectorXd& u, const VectorXd& v,
                          const DerivativeScheme& scheme);

}  // namespace cheegerlab
