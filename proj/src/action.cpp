#include "cheegerlab/action.hpp"

namespace cheegerlab {

ActionInvariantReport check_action_invariants(const ActionSpec& A,
                                              int n_samples,
                                              std::uint64_t seed) {
  Rng rng(seed);
  ActionInvariantReport r;
  const auto& M = *A.G.objects;
  const auto& P = *A.total;
  for (int k = 0; k < n_samples; ++k) {
    Point z = A.sample_fp(rng);
    Point g = A.fp_to_G(z);
    Point p = A.fp_to_P(z);
    r.moment_compat = std::max(r.moment_compat, M.distance(A.G.src(g), A.alpha(p)));
    r.action_axiom = std::max(r.action_axiom, M.distance(A.alpha(A.mu(z)), A.G.tgt(g)));
    Point q = A.sample_total(rng);
    r.unit_acts_trivially =
        std::max(r.unit_acts_trivially, P.distance(A.mu(A.unit_arrow(q)), q));
  }
  r.pass = r.max_residual() < 1e-10;
  return r;
}

GroupoidSpec build_action_groupoid(const ActionSpec& A) {
  GroupoidSpec G;
  G.name = "action(" + A.G.name + ")";
  G.objects = A.total;
  G.arrows = A.fp;
  G.comp = A.acomp;
  auto fp_to_P = A.fp_to_P;
  auto fp_to_G = A.fp_to_G;
  auto mu = A.mu;
  auto fp_compose = A.fp_compose;
  auto Gin = A.G;
  auto alpha = A.alpha;
  G.src = SmoothMap{A.fp, A.total,
                    [fp_to_P](const Point& z) { return fp_to_P.eval(z); }};
  G.tgt = A.mu;
  G.unit = SmoothMap{A.total, A.fp, [Gin, alpha, fp_compose](const Point& p) {
                       return fp_compose(Gin.unit(alpha(p)), p);
                     }};
  G.inv = SmoothMap{A.fp, A.fp, [Gin, fp_to_G, mu, fp_compose](const Point& z) {
                      Point g = fp_to_G(z);
                      return fp_compose(Gin.inv(g), mu(z));
                    }};
  G.pr1 = A.acomp_pr1;
  G.pr2 = A.acomp_pr2;
  G.mul = A.acomp_mul;
  G.compose_point = A.acompose_point;
  G.sample_object = A.sample_total;
  G.sample_arrow = A.sample_fp;
  G.sample_comp = A.sample_acomp;
  G.sample_triple = A.sample_atriple;
  return G;
}

FpTangent fp_tangent_from_pair(const ActionSpec& A, const Point& z,
                               const VectorXd& wg, const VectorXd& wp,
                               const DerivativeScheme& scheme) {
  Point zc = A.fp->canonicalize(z);
  Point g = A.fp_to_G(zc);
  Point p = A.fp_to_P(zc);
  MatrixXd Jg = jacobian_fixed_charts(A.fp_to_G, zc, g.chart, scheme);
  MatrixXd Jp = jacobian_fixed_charts(A.fp_to_P, zc, p.chart, scheme);
  MatrixXd J(Jg.rows() + Jp.rows(), Jg.cols());
  J << Jg, Jp;
  VectorXd w(Jg.rows() + Jp.rows());
  w << wg, wp;
  VectorXd u = J.colPivHouseholderQr().solve(w);
  double residual = (J * u - w).norm();
  return FpTangent{u, residual};
}

MatrixXd source_kernel_at_unit(const ActionSpec& A, const Point& p,
                               const DerivativeScheme& scheme) {
  Point pm = A.alpha(p);
  Point ug = A.G.unit(pm);
  MatrixXd Js = jacobian(A.G.src, ug, scheme);
  return kernel_basis(Js, 1e-8, 10.0, "groupoids");
}

VectorXd action_vector(const ActionSpec& A, const VectorXd& x, const Point& p,
                       const DerivativeScheme& scheme) {
  Point pc = A.total->canonicalize(p);
  Point z = A.unit_arrow(pc);
  auto ft = fp_tangent_from_pair(A, z, x, VectorXd::Zero(A.total->dim()), scheme);
  if (ft.residual > 1e-7)
    raise(ErrorKind::NotTangent, "cheeger",
          "kernel-vector pair (x, 0) is not tangent to the arrow space",
          ft.residual);
  MatrixXd Jmu = jacobian_fixed_charts(A.mu, A.fp->canonicalize(z), pc.chart, scheme);
  return -Jmu * ft.u;
}

std::vector<TangentVector> orbit_tangent_basis(const ActionSpec& A,
                                               const Point& p,
                                               const DerivativeScheme& scheme) {
  Point pc = A.total->canonicalize(p);
  MatrixXd K = source_kernel_at_unit(A, pc, scheme);
  std::vector<TangentVector> out;
  MatrixXd collected(A.total->dim(), K.cols());
  int kept = 0;
  for (int c = 0; c < K.cols(); ++c) {
    VectorXd xs = action_vector(A, K.col(c), pc, scheme);
    // keep only directions independent of what we already have
    collected.col(kept) = xs;
    Eigen::JacobiSVD<MatrixXd> svd(collected.leftCols(kept + 1));
    if (svd.singularValues().minCoeff() > 1e-8) {
      ++kept;
      out.push_back(TangentVector{pc, xs});
    }
  }
  return out;
}

MatrixXd orbit_tangent_matrix(const ActionSpec& A, const Point& p,
                              const DerivativeScheme& scheme) {
  auto basis = orbit_tangent_basis(A, p, scheme);
  MatrixXd O(A.total->dim(), basis.size());
  for (size_t i = 0; i < basis.size(); ++i) O.col(i) = basis[i].components;
  return O;
}

double orbit_in_fiber_residual(const ActionSpec& A, const Point& p,
                               const DerivativeScheme& scheme) {
  Point pc = A.total->canonicalize(p);
  if (A.G.objects->dim() == 0) return 0.0;
  MatrixXd K = source_kernel_at_unit(A, pc, scheme);
  MatrixXd Ja = jacobian(A.alpha, pc, scheme);
  double worst = 0.0;
  for (int c = 0; c < K.cols(); ++c) {
    VectorXd xs = action_vector(A, K.col(c), pc, scheme);
    double n = xs.norm();
    if (n < 1e-12) continue;
    worst = std::max(worst, (Ja * xs).norm() / n);
  }
  return worst;
}

VerticalIdentityReport vertical_identity_residual(const ActionSpec& A,
                                                  const Point& p,
                                                  const DerivativeScheme& scheme) {
  Point pc = A.total->canonicalize(p);
  MatrixXd K = source_kernel_at_unit(A, pc, scheme);
  Point z = A.unit_arrow(pc);
  Point zc = A.fp->canonicalize(z);
  MatrixXd Jmu = jacobian(A.mu, zc, scheme);
  VerticalIdentityReport rep;
  for (int c = 0; c < K.cols(); ++c) {
    VectorXd xs = action_vector(A, K.col(c), pc, scheme);
    auto ft = fp_tangent_from_pair(A, zc, K.col(c), xs, scheme);
    rep.tangency = std::max(rep.tangency, ft.residual);
    rep.dtbar_norm = std::max(rep.dtbar_norm, (Jmu * ft.u).norm());
  }
  return rep;
}

}  // namespace cheegerlab
