#pragma once

#include "cheegerlab/deformation.hpp"
#include "cheegerlab/gauss.hpp"
#include "cheegerlab/submersion_geometry.hpp"

namespace cheegerlab {

/// Term-by-term decomposition of the sectional curvature of the deformed
/// metric at the Ch^{-1} images of the plane (v, w), against the direct
/// curvature oracle. Both sign arrangements of the Gauss terms are reported;
/// `best_sign` states which one the oracle matches ("indeterminate" when the
/// embedding is totally geodesic and the two coincide).
struct CurvatureReport {
  Point point;
  VectorXd v, w;
  double epsilon = 1.0;

  double k_etaP = 0.0;       // K_{eta^P}(v, w), unnormalized
  double eps3_KQ = 0.0;      // eps^3 K_Q(Sh v, Sh w) at the unit arrow
  double a_term = 0.0;       // 3 |A_{lift v} lift w|^2 in eta-hat
  double gauss_mixed = 0.0;  // |II(lift v, lift w)|^2
  double gauss_diag = 0.0;   // <II(lift v, lift v), II(lift w, lift w)>

  double lhs_direct = 0.0;   // K_{eta_eps}(Ch^{-1} v, Ch^{-1} w), direct
  double rhs_paper_sign = 0.0;  // ... + gauss_mixed - gauss_diag
  double rhs_gauss_sign = 0.0;  // ... + gauss_diag - gauss_mixed
  double residual_paper = 0.0;
  double residual_gauss = 0.0;
  std::string best_sign;  // "gauss" | "paper" | "indeterminate"
  double residual = 0.0;  // best-sign residual

  double lift_tangency = 0.0;  // defect of the unit-arrow shortcut lift
};

/// Requires the normal-in-fiber hypothesis flag (HypothesisViolated
/// otherwise) and linearly independent v, w.
CurvatureReport curvature_decomposition(const ActionSpec& A, const MetricField& Q,
                                        const MetricField& etaP,
                                        const DeformationConfig& cfg,
                                        const Point& p, const VectorXd& v,
                                        const VectorXd& w);

/// Ambient product G x P with the metric (1/eps) Q ⊕ eta^P, and the
/// embedding of the arrow space into it.
struct AmbientProduct {
  AtlasPtr atlas;
  SmoothMap embed;  // fp -> G x P
  MetricField metric;
};
AmbientProduct ambient_product(const ActionSpec& A, const MetricField& Q,
                               const MetricField& etaP, double epsilon,
                               const DerivativeScheme& scheme);

}  // namespace cheegerlab
