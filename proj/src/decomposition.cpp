#include "cheegerlab/decomposition.hpp"

#include "cheegerlab/curvature.hpp"

namespace cheegerlab {

AmbientProduct ambient_product(const ActionSpec& A, const MetricField& Q,
                               const MetricField& etaP, double epsilon,
                               const DerivativeScheme& scheme) {
  (void)scheme;
  AmbientProduct out;
  out.atlas = product_atlas("ambient(" + A.G.arrows->name() + "x" +
                                A.total->name() + ")",
                            {A.G.arrows, A.total});
  auto amb = out.atlas;
  auto fp_to_G = A.fp_to_G;
  auto fp_to_P = A.fp_to_P;
  out.embed = SmoothMap{A.fp, amb, [amb, fp_to_G, fp_to_P](const Point& z) {
                          return product_point(*amb, {fp_to_G(z), fp_to_P(z)});
                        }};
  MetricField scaledQ{
      Q.atlas, [Q, epsilon](const Point& g) {
        return MatrixXd((1.0 / epsilon) * Q.eval(g));
      }};
  out.metric = product_metric(amb, {scaledQ, etaP});
  return out;
}

CurvatureReport curvature_decomposition(const ActionSpec& A, const MetricField& Q,
                                        const MetricField& etaP,
                                        const DeformationConfig& cfg,
                                        const Point& p, const VectorXd& v,
                                        const VectorXd& w) {
  if (!A.hypothesis_normal_in_fiber)
    raise(ErrorKind::HypothesisViolated, "curvpipe",
          "curvature decomposition assumes the normal-in-fiber hypothesis");
  const DerivativeScheme& scheme = cfg.scheme;
  CurvatureReport rep;
  rep.point = A.total->canonicalize(p);
  rep.v = v;
  rep.w = w;
  rep.epsilon = cfg.epsilon;
  const Point& pc = rep.point;

  // orbit/Cheeger tensors and kernel solutions for v and w
  CheegerTensor ct = cheeger_tensor(A, Q, etaP, cfg, pc);
  const ShapeTensor& sh = ct.shape;
  VectorXd x = recover_kernel_coordinates(sh, etaP, v);
  VectorXd y = recover_kernel_coordinates(sh, etaP, w);

  // K_{eta^P}(v, w)
  rep.k_etaP = curvature_K_unnormalized_lenient(etaP, pc, v, w, scheme);

  // eps^3 K_Q(Sh v, Sh w), evaluated on the arrow space at the unit arrow
  Point ug = A.G.arrows->canonicalize(A.G.unit(A.alpha(pc)));
  if (x.size() > 0) {
    VectorXd shx = sh.kernel_basis * (sh.matrix * x);
    VectorXd shy = sh.kernel_basis * (sh.matrix * y);
    double kq = curvature_K_unnormalized_lenient(Q, ug, shx, shy, scheme);
    rep.eps3_KQ = std::pow(cfg.epsilon, 3) * kq;
  }

  // deformed metric (general path: the ground truth) and the direct oracle
  DeformationConfig gcfg = cfg;
  gcfg.path = DeformationConfig::Path::general;
  MetricField eta_eps = deformed_metric(A, Q, etaP, gcfg);
  VectorXd u1 = ct.ch_inv * v;
  VectorXd u2 = ct.ch_inv * w;
  rep.lhs_direct =
      curvature_K(eta_eps, make_plane(eta_eps, pc, u1, u2), scheme, false);

  // A-tensor term at the unit arrow with the true horizontal lifts
  MetricField hat = hat_metric(A, Q, etaP, cfg.epsilon, scheme);
  SmoothMap tbar = tbar_map(A);
  Point z = A.fp->canonicalize(A.unit_arrow(pc));
  VectorXd lift1 = horizontal_lift_at(tbar, hat, z, u1, scheme);
  VectorXd lift2 = horizontal_lift_at(tbar, hat, z, u2, scheme);
  VectorXd Avec = a_tensor(tbar, hat, z, lift1, lift2, scheme);
  MatrixXd Ghat = hat.eval(z);
  rep.a_term = 3.0 * (Avec.transpose() * Ghat * Avec)(0);

  // Gauss terms of the arrow space inside (G x P, (1/eps) Q ⊕ eta^P)
  AmbientProduct amb = ambient_product(A, Q, etaP, cfg.epsilon, scheme);
  VectorXd II11 = second_fundamental_form(amb.embed, amb.metric, z, lift1, lift1, scheme);
  VectorXd II22 = second_fundamental_form(amb.embed, amb.metric, z, lift2, lift2, scheme);
  VectorXd II12 = second_fundamental_form(amb.embed, amb.metric, z, lift1, lift2, scheme);
  MatrixXd Gamb = amb.metric.eval(amb.embed(z));
  rep.gauss_mixed = (II12.transpose() * Gamb * II12)(0);
  rep.gauss_diag = (II11.transpose() * Gamb * II22)(0);

  double common = rep.k_etaP + rep.eps3_KQ + rep.a_term;
  rep.rhs_paper_sign = common + rep.gauss_mixed - rep.gauss_diag;
  rep.rhs_gauss_sign = common + rep.gauss_diag - rep.gauss_mixed;
  rep.residual_paper = std::abs(rep.lhs_direct - rep.rhs_paper_sign);
  rep.residual_gauss = std::abs(rep.lhs_direct - rep.rhs_gauss_sign);
  if (rep.gauss_mixed + std::abs(rep.gauss_diag) < 1e-9) {
    rep.best_sign = "indeterminate";
    rep.residual = rep.residual_gauss;
  } else if (rep.residual_gauss <= rep.residual_paper) {
    rep.best_sign = "gauss";
    rep.residual = rep.residual_gauss;
  } else {
    rep.best_sign = "paper";
    rep.residual = rep.residual_paper;
  }

  UnitLift ul1 = horizontal_lift_h(A, Q, etaP, cfg, pc, v);
  UnitLift ul2 = horizontal_lift_h(A, Q, etaP, cfg, pc, w);
  rep.lift_tangency = std::max(ul1.tangency, ul2.tangency);
  return rep;
}

}  // namespace cheegerlab
