#include "cheegerlab/gmetric_checks.hpp"

namespace cheegerlab {

SubmersionCheckReport check_riemannian_submersion(
    const SmoothMap& f, const MetricField& g_total, const MetricField& g_base,
    int n_samples, std::uint64_t seed,
    const std::function<Point(Rng&)>& sample_total,
    const DerivativeScheme& scheme) {
  Rng rng(seed);
  SubmersionCheckReport rep;
  rep.samples = n_samples;
  const int m = f.target->dim();
  for (int k = 0; k < n_samples; ++k) {
    Point z = f.source->canonicalize(sample_total(rng));
    if (m == 0) continue;  // 0-dimensional base: nothing to compare
    Point q = f(z);
    MatrixXd J = jacobian_fixed_charts(f, z, q.chart, scheme);
    if (smallest_singular_value(J) < 1e-6)
      raise(ErrorKind::RankInstability, "gmetrics",
            f.source->name() + ": map is not a submersion at a sample",
            smallest_singular_value(J));
    MatrixXd G = g_total.eval(z);
    MatrixXd K = kernel_basis(J, 1e-8, 10.0, "gmetrics");
    // horizontal space: G-orthogonal complement of ker J
    MatrixXd H;
    if (K.cols() == 0) {
      H = MatrixXd::Identity(J.cols(), J.cols());
    } else {
      H = kernel_basis(MatrixXd(K.transpose() * G), 1e-8, 10.0, "gmetrics");
    }
    MatrixXd Hn = g_orthonormalize(H, G);
    MatrixXd JB = J * Hn;
    MatrixXd Mcmp = JB.transpose() * g_base.eval(q) * JB;
    rep.residual = std::max(
        rep.residual,
        max_abs(Mcmp - MatrixXd::Identity(Mcmp.rows(), Mcmp.cols())));
  }
  return rep;
}

double isometry_residual(const SmoothMap& phi, const MetricField& gA,
                         const MetricField& gB, int n_samples,
                         std::uint64_t seed,
                         const std::function<Point(Rng&)>& sample,
                         const DerivativeScheme& scheme) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    Point z = phi.source->canonicalize(sample(rng));
    Point q = phi(z);
    MatrixXd J = jacobian_fixed_charts(phi, z, q.chart, scheme);
    MatrixXd pulled = J.transpose() * gB.eval(q) * J;
    worst = std::max(worst, max_abs(pulled - gA.eval(z)));
  }
  return worst;
}

OneMetricReport check_one_metric(const GroupoidSpec& G, const MetricField& Q,
                                 const MetricField& eta0, int n_samples,
                                 std::uint64_t seed,
                                 const DerivativeScheme& scheme) {
  OneMetricReport rep;
  rep.s_residual = check_riemannian_submersion(G.src, Q, eta0, n_samples, seed,
                                               G.sample_arrow, scheme)
                       .residual;
  rep.t_residual = check_riemannian_submersion(G.tgt, Q, eta0, n_samples,
                                               seed + 1, G.sample_arrow, scheme)
                       .residual;
  rep.inv_isometry =
      isometry_residual(G.inv, Q, Q, n_samples, seed + 2, G.sample_arrow, scheme);
  rep.pass = rep.s_residual < 1e-6 && rep.t_residual < 1e-6 &&
             rep.inv_isometry < 1e-8;
  return rep;
}

TwoMetricReport check_two_metric(const GroupoidSpec& G, const MetricField& eta2,
                                 const std::vector<SmoothMap>& s3_generators,
                                 const MetricField& Q, int n_samples,
                                 std::uint64_t seed,
                                 const DerivativeScheme& scheme) {
  TwoMetricReport rep;
  rep.mul_residual = check_riemannian_submersion(G.mul, eta2, Q, n_samples,
                                                 seed, G.sample_comp, scheme)
                         .residual;
  rep.pr1_residual = check_riemannian_submersion(G.pr1, eta2, Q, n_samples,
                                                 seed + 1, G.sample_comp, scheme)
                         .residual;
  rep.pr2_residual = check_riemannian_submersion(G.pr2, eta2, Q, n_samples,
                                                 seed + 2, G.sample_comp, scheme)
                         .residual;
  for (size_t i = 0; i < s3_generators.size(); ++i)
    rep.s3_isometry = std::max(
        rep.s3_isometry,
        isometry_residual(s3_generators[i], eta2, eta2, n_samples,
                          seed + 3 + i, G.sample_comp, scheme));
  rep.pass = rep.mul_residual < 1e-6 && rep.pr1_residual < 1e-6 &&
             rep.pr2_residual < 1e-6 && rep.s3_isometry < 1e-8;
  return rep;
}

MatrixXd normal_space_basis(const ActionSpec& A, const MetricField& etaP,
                            const Point& p, const DerivativeScheme& scheme) {
  Point pc = A.total->canonicalize(p);
  MatrixXd O = orbit_tangent_matrix(A, pc, scheme);
  MatrixXd G = etaP.eval(pc);
  if (O.cols() == 0) {
    return g_orthonormalize(MatrixXd::Identity(G.rows(), G.cols()), G);
  }
  MatrixXd N = kernel_basis(MatrixXd(O.transpose() * G), 1e-8, 10.0, "gmetrics");
  return g_orthonormalize(N, G);
}

TangentVector normal_representation(const ActionSpec& A,
                                    const MetricField& etaP, const Point& z,
                                    const VectorXd& v,
                                    const DerivativeScheme& scheme) {
  Point zc = A.fp->canonicalize(z);
  Point p = A.fp_to_P(zc);
  Point q = A.mu(zc);
  // orthogonality precondition: v must be normal to the orbit at p
  MatrixXd O = orbit_tangent_matrix(A, p, scheme);
  MatrixXd Gp = etaP.eval(p);
  if (O.cols() > 0) {
    double res = (O.transpose() * Gp * v).cwiseAbs().maxCoeff();
    if (res > 1e-8 * std::max(1.0, v.norm()))
      raise(ErrorKind::ConstraintViolation, "gmetrics",
            "normal_representation input is not orbit-normal", res);
  }
  MatrixXd Js = jacobian_fixed_charts(
      SmoothMap{A.fp, A.total,
                [f = A.fp_to_P](const Point& w) { return f.eval(w); }},
      zc, p.chart, scheme);
  if (smallest_singular_value(Js) < 1e-6)
    raise(ErrorKind::RankInstability, "gmetrics",
          "source map of the action groupoid is rank-deficient");
  // curve lift: w with D s̄ (w) = v, taken in the row-space complement of ker
  VectorXd w = Js.completeOrthogonalDecomposition().pseudoInverse() * v;
  MatrixXd Jt = jacobian_fixed_charts(A.mu, zc, q.chart, scheme);
  VectorXd pushed = Jt * w;
  // class modulo the orbit tangent at the target, represented by the
  // etaP-orthogonal projection onto the normal space
  MatrixXd Oq = orbit_tangent_matrix(A, q, scheme);
  MatrixXd Gq = etaP.eval(q);
  VectorXd out = pushed;
  if (Oq.cols() > 0) out = pushed - g_projector(Oq, Gq) * pushed;
  return TangentVector{q, out};
}

TransverseInvarianceReport check_transverse_invariance(
    const ActionSpec& A, const MetricField& etaP, int n_samples,
    std::uint64_t seed, const DerivativeScheme& scheme) {
  Rng rng(seed);
  TransverseInvarianceReport rep;
  for (int k = 0; k < n_samples; ++k) {
    Point z = A.fp->canonicalize(A.sample_fp(rng));
    Point p = A.fp_to_P(z);
    Point q = A.mu(z);
    MatrixXd N = normal_space_basis(A, etaP, p, scheme);
    rep.normal_dim = static_cast<int>(N.cols());
    if (N.cols() == 0) continue;  // no normal directions: vacuous
    MatrixXd Gq = etaP.eval(q);
    MatrixXd img(A.total->dim(), N.cols());
    for (int c = 0; c < N.cols(); ++c)
      img.col(c) = normal_representation(A, etaP, z, N.col(c), scheme).components;
    MatrixXd gram = img.transpose() * Gq * img;
    rep.deviation = std::max(
        rep.deviation,
        max_abs(gram - MatrixXd::Identity(gram.rows(), gram.cols())));
  }
  rep.pass = rep.deviation < 1e-5;
  return rep;
}

}  // namespace cheegerlab
