#pragma once

#include "cheegerlab/groupoid.hpp"

namespace cheegerlab {

/// A left groupoid action along a moment map, with an explicit atlas for the
/// fibered product G x_M P (arrows of the action groupoid) and, for axiom
/// checking, an explicit atlas for its composable pairs.
struct ActionSpec {
  GroupoidSpec G;
  AtlasPtr total;   // P
  SmoothMap alpha;  // P -> M
  AtlasPtr fp;      // G x_M P
  SmoothMap fp_to_G;  // fp -> arrows of G
  SmoothMap fp_to_P;  // fp -> P
  /// Builds the fp point of (g, p); raises ConstraintViolation when
  /// s(g) != alpha(p) beyond tolerance.
  std::function<Point(const Point& g, const Point& p)> fp_compose;
  SmoothMap mu;  // fp -> P

  bool hypothesis_normal_in_fiber = false;

  std::function<Point(Rng&)> sample_total;
  std::function<Point(Rng&)> sample_fp;

  // composable-pair presentation for the action groupoid
  AtlasPtr acomp;
  SmoothMap acomp_pr1, acomp_pr2, acomp_mul;  // acomp -> fp
  std::function<Point(const Point&, const Point&)> acompose_point;
  std::function<Point(Rng&)> sample_acomp;
  std::function<std::array<Point, 3>(Rng&)> sample_atriple;

  Point unit_arrow(const Point& p) const {
    return fp_compose(G.unit(alpha(p)), p);
  }
};

struct ActionInvariantReport {
  double moment_compat = 0.0;  // s(pr_G z) = alpha(pr_P z)
  double action_axiom = 0.0;   // alpha(mu(z)) = t(pr_G z)
  double unit_acts_trivially = 0.0;  // mu(1_alpha(p), p) = p
  bool pass = false;
  double max_residual() const {
    return std::max({moment_compat, action_axiom, unit_acts_trivially});
  }
};

/// Samples the fp atlas and checks the action-spec invariants (tolerance 1e-10).
ActionInvariantReport check_action_invariants(const ActionSpec& A,
                                              int n_samples, std::uint64_t seed);

/// Action groupoid G x_M P over P: s(g,p) = p, t(g,p) = mu(g,p),
/// unit p -> (1_alpha(p), p), inverse (g,p) -> (i(g), mu(g,p)).
GroupoidSpec build_action_groupoid(const ActionSpec& A);

/// The tangent vector of the fp atlas whose ambient pair is (wg, wp), with
/// wg in the chart of fp_to_G(z) and wp in the chart of fp_to_P(z).
/// Returns the chart vector and the least-squares tangency residual.
struct FpTangent {
  VectorXd u;
  double residual;
};
FpTangent fp_tangent_from_pair(const ActionSpec& A, const Point& z,
                               const VectorXd& wg, const VectorXd& wp,
                               const DerivativeScheme& scheme);

/// Basis of ker D_{1_alpha(p)} s (columns, chart coordinates of the arrows
/// atlas at the unit), SVD cutoff 1e-8 with a required spectral gap.
MatrixXd source_kernel_at_unit(const ActionSpec& A, const Point& p,
                               const DerivativeScheme& scheme);

/// Action vector X*(p) = -D_{(1,p)} t̄ (x, 0) for a kernel vector x.
VectorXd action_vector(const ActionSpec& A, const VectorXd& x, const Point& p,
                       const DerivativeScheme& scheme);

/// Independent action vectors spanning T_p L_p.
std::vector<TangentVector> orbit_tangent_basis(const ActionSpec& A,
                                               const Point& p,
                                               const DerivativeScheme& scheme);

/// Orbit-tangent matrix (columns) at p; may have fewer columns than
/// ker D s when the action has isotropy.
MatrixXd orbit_tangent_matrix(const ActionSpec& A, const Point& p,
                              const DerivativeScheme& scheme);

/// max_x ||D alpha(X*(p))|| over unit kernel vectors: zero exactly when the
/// orbit through p stays inside the moment fiber. This is the computable
/// obstruction to the unit-arrow shortcut identities.
double orbit_in_fiber_residual(const ActionSpec& A, const Point& p,
                               const DerivativeScheme& scheme);

/// Residual of the unit-arrow vertical-space identity: builds the ambient
/// pair (x, X*(p)) and reports {tangency residual, ||D t̄ u||} where u is the
/// least-squares fp tangent. The identity only holds when the first residual
/// vanishes.
struct VerticalIdentityReport {
  double tangency = 0.0;
  double dtbar_norm = 0.0;
};
VerticalIdentityReport vertical_identity_residual(const ActionSpec& A,
                                                  const Point& p,
                                                  const DerivativeScheme& scheme);

}  // namespace cheegerlab
