#pragma once

#include "cheegerlab/action.hpp"

namespace cheegerlab {

/// Residual of f: (total, g_total) -> (base, g_base) being a Riemannian
/// submersion: at each sample, the matrix of g_base(Df., Df.) on a
/// g_total-orthonormal basis of the horizontal space, compared with the
/// identity; reports the max deviation over samples.
struct SubmersionCheckReport {
  double residual = 0.0;
  int samples = 0;
  bool pass(double tol = 1e-6) const { return residual < tol; }
};

SubmersionCheckReport check_riemannian_submersion(
    const SmoothMap& f, const MetricField& g_total, const MetricField& g_base,
    int n_samples, std::uint64_t seed,
    const std::function<Point(Rng&)>& sample_total,
    const DerivativeScheme& scheme);

/// 1-metric validator: s and t are Riemannian submersions onto the supplied
/// object metric and the inversion map is an isometry of Q.
struct OneMetricReport {
  double s_residual = 0.0;
  double t_residual = 0.0;
  double inv_isometry = 0.0;
  bool pass = false;
};

OneMetricReport check_one_metric(const GroupoidSpec& G, const MetricField& Q,
                                 const MetricField& eta0, int n_samples,
                                 std::uint64_t seed,
                                 const DerivativeScheme& scheme);

/// 2-metric validator: m, pr1, pr2 are Riemannian submersions from
/// (G^(2), eta2) onto (G, Q) and the supplied symmetric-group generators
/// pull eta2 back to itself.
struct TwoMetricReport {
  double mul_residual = 0.0;
  double pr1_residual = 0.0;
  double pr2_residual = 0.0;
  double s3_isometry = 0.0;
  bool pass = false;
};

TwoMetricReport check_two_metric(const GroupoidSpec& G, const MetricField& eta2,
                                 const std::vector<SmoothMap>& s3_generators,
                                 const MetricField& Q, int n_samples,
                                 std::uint64_t seed,
                                 const DerivativeScheme& scheme);

/// Isometry residual of phi: (A, gA) -> (A', gB): max |phi*gB - gA| on samples.
double isometry_residual(const SmoothMap& phi, const MetricField& gA,
                         const MetricField& gB, int n_samples,
                         std::uint64_t seed,
                         const std::function<Point(Rng&)>& sample,
                         const DerivativeScheme& scheme);

/// Normal representation of the action groupoid at the arrow z = (g, p):
/// transports a normal vector v at p to a normal vector at mu(g, p) by
/// lifting through D s̄ and pushing with D t̄, then projecting
/// eta^P-orthogonally onto the normal space of the target orbit.
TangentVector normal_representation(const ActionSpec& A,
                                    const MetricField& etaP, const Point& z,
                                    const VectorXd& v,
                                    const DerivativeScheme& scheme);

/// Transverse invariance: for sampled arrows, the normal representation maps
/// eta^P-orthonormal normal frames to frames whose Gram matrix deviates from
/// the identity by < 1e-5.
struct TransverseInvarianceReport {
  double deviation = 0.0;
  int normal_dim = -1;
  bool pass = false;
};

TransverseInvarianceReport check_transverse_invariance(
    const ActionSpec& A, const MetricField& etaP, int n_samples,
    std::uint64_t seed, const DerivativeScheme& scheme);

/// eta^P-orthonormal basis of the orbit-normal space at p (columns).
MatrixXd normal_space_basis(const ActionSpec& A, const MetricField& etaP,
                            const Point& p, const DerivativeScheme& scheme);

}  // namespace cheegerlab
