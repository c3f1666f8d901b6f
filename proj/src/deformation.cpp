#include "cheegerlab/deformation.hpp"

namespace cheegerlab {

ShapeTensor shape_tensor(const ActionSpec& A, const MetricField& Q,
                         const MetricField& etaP, const Point& p,
                         const DerivativeScheme& scheme) {
  ShapeTensor sh;
  sh.base = A.total->canonicalize(p);
  sh.kernel_basis = source_kernel_at_unit(A, sh.base, scheme);
  const int k = static_cast<int>(sh.kernel_basis.cols());
  Point ug = A.G.unit(A.alpha(sh.base));
  MatrixXd Qg = Q.eval(ug);
  sh.gram_Q = sh.kernel_basis.transpose() * Qg * sh.kernel_basis;
  sh.action_vectors.resize(A.total->dim(), k);
  for (int c = 0; c < k; ++c)
    sh.action_vectors.col(c) =
        action_vector(A, sh.kernel_basis.col(c), sh.base, scheme);
  MatrixXd Gp = etaP.eval(sh.base);
  sh.gram_star = sh.action_vectors.transpose() * Gp * sh.action_vectors;
  sh.matrix = sh.gram_Q.ldlt().solve(sh.gram_star);

  // self-adjointness w.r.t. gram_Q and positive semidefiniteness
  double adj = max_abs(sh.gram_Q * sh.matrix - sh.matrix.transpose() * sh.gram_Q);
  if (adj > 1e-8)
    raise(ErrorKind::NumericFailure, "cheeger",
          "orbit tensor is not Q-self-adjoint", adj);
  if (k > 0) {
    double lmin = min_eigenvalue(symmetrize(sh.gram_star));
    if (lmin < -1e-10)
      raise(ErrorKind::NumericFailure, "cheeger",
            "orbit tensor is not positive semidefinite", lmin);
  }
  return sh;
}

VectorXd recover_kernel_coordinates(const ShapeTensor& sh, const MetricField& etaP,
                                    const VectorXd& X) {
  const MatrixXd& Phi = sh.action_vectors;
  if (Phi.cols() == 0) return VectorXd(0);
  MatrixXd G = etaP.eval(sh.base);
  // orbit-tangent component of X in the eta^P-orthogonal splitting
  VectorXd Xtop = g_projector(Phi, G) * X;
  VectorXd x = Phi.colPivHouseholderQr().solve(Xtop);
  double res = (Phi * x - Xtop).norm();
  if (res > 1e-8 * std::max(1.0, X.norm()))
    raise(ErrorKind::NumericFailure, "cheeger",
          "kernel-coordinate recovery failed", res);
  return x;
}

CheegerTensor cheeger_tensor(const ActionSpec& A, const MetricField& Q,
                             const MetricField& etaP,
                             const DeformationConfig& cfg, const Point& p) {
  CheegerTensor ct;
  ct.shape = shape_tensor(A, Q, etaP, p, cfg.scheme);
  ct.base = ct.shape.base;
  const int n = A.total->dim();
  const MatrixXd& Phi = ct.shape.action_vectors;
  const int l = static_cast<int>(Phi.cols());
  MatrixXd G = etaP.eval(ct.base);
  if (l == 0) {
    ct.ch = MatrixXd::Identity(n, n);
    ct.ch_inv = ct.ch;
    return ct;
  }
  // eta^P-orthogonal complement of the orbit tangent
  MatrixXd N = kernel_basis(MatrixXd(Phi.transpose() * G), 1e-8, 10.0, "cheeger");
  MatrixXd basis(n, l + N.cols());
  basis << Phi, N;
  Eigen::FullPivLU<MatrixXd> lu(basis);
  if (!lu.isInvertible())
    raise(ErrorKind::NonInvertible, "cheeger",
          "orbit/normal splitting is degenerate");
  MatrixXd core = MatrixXd::Identity(l + N.cols(), l + N.cols());
  // On the orbit part, Ch^{-1}(X*(x)) = ((I + eps Sh) x)*; in the Phi basis
  // that is the matrix I + eps*Sh.
  core.topLeftCorner(l, l) += cfg.epsilon * ct.shape.matrix;
  ct.ch_inv = basis * core * lu.inverse();
  Eigen::FullPivLU<MatrixXd> lu2(ct.ch_inv);
  if (!lu2.isInvertible())
    raise(ErrorKind::NonInvertible, "cheeger", "Cheeger tensor not invertible");
  ct.ch = lu2.inverse();
  return ct;
}

SmoothMap tbar_map(const ActionSpec& A) { return A.mu; }

SmoothMap sbar_map(const ActionSpec& A) {
  return SmoothMap{A.fp, A.total,
                   [f = A.fp_to_P](const Point& z) { return f.eval(z); }};
}

MetricField hat_metric(const ActionSpec& A, const MetricField& Q,
                       const MetricField& etaP, double epsilon,
                       const DerivativeScheme& scheme) {
  auto fp_to_G = A.fp_to_G;
  auto fp_to_P = A.fp_to_P;
  return MetricField{
      A.fp, [A, Q, etaP, epsilon, scheme, fp_to_G, fp_to_P](const Point& z) {
        Point g = A.G.arrows->canonicalize(fp_to_G.eval(z));
        Point p = A.total->canonicalize(fp_to_P.eval(z));
        MatrixXd Jg = jacobian_fixed_charts(fp_to_G, z, g.chart, scheme);
        MatrixXd Jp = jacobian_fixed_charts(fp_to_P, z, p.chart, scheme);
        return MatrixXd((1.0 / epsilon) * Jg.transpose() * Q.eval(g) * Jg +
                        Jp.transpose() * etaP.eval(p) * Jp);
      }};
}

UnitLift horizontal_lift_h(const ActionSpec& A, const MetricField& Q,
                           const MetricField& etaP, const DeformationConfig& cfg,
                           const Point& p, const VectorXd& X) {
  ShapeTensor sh = shape_tensor(A, Q, etaP, p, cfg.scheme);
  VectorXd x = recover_kernel_coordinates(sh, etaP, X);
  UnitLift lift;
  const int dG = A.G.arrows->dim();
  lift.arrow_part = VectorXd::Zero(dG);
  if (x.size() > 0)
    lift.arrow_part = -cfg.epsilon * sh.kernel_basis * (sh.matrix * x);
  lift.base_part = X;
  Point z = A.unit_arrow(sh.base);
  auto ft = fp_tangent_from_pair(A, z, lift.arrow_part, lift.base_part, cfg.scheme);
  lift.fp_vector = ft.u;
  lift.tangency = ft.residual;
  // horizontality against the span of (z_k, Z_k*(p)) in the ambient pairing
  Point ug = A.G.unit(A.alpha(sh.base));
  MatrixXd Qg = Q.eval(ug);
  MatrixXd Gp = etaP.eval(sh.base);
  for (int c = 0; c < sh.kernel_basis.cols(); ++c) {
    double ip = (1.0 / cfg.epsilon) *
                    (lift.arrow_part.transpose() * Qg * sh.kernel_basis.col(c))(0) +
                (lift.base_part.transpose() * Gp * sh.action_vectors.col(c))(0);
    lift.horizontality = std::max(lift.horizontality, std::abs(ip));
  }
  return lift;
}

namespace {

MatrixXd general_path_matrix(const ActionSpec& A, const MetricField& hat,
                             const Point& p, const DerivativeScheme& scheme) {
  Point z = A.fp->canonicalize(A.unit_arrow(p));
  MatrixXd J = jacobian_fixed_charts(A.mu, z, p.chart, scheme);
  MatrixXd G = hat.eval(z);
  return pushforward_metric(J, G, "cheeger");
}

}  // namespace

MetricField deformed_metric(const ActionSpec& A, const MetricField& Q,
                            const MetricField& etaP,
                            const DeformationConfig& cfg,
                            std::shared_ptr<double> deviation_out) {
  using Path = DeformationConfig::Path;
  if (cfg.path == Path::fast && !A.hypothesis_normal_in_fiber)
    raise(ErrorKind::HypothesisViolated, "cheeger",
          "fast path requested but the normal-in-fiber hypothesis is not "
          "declared for this action");
  MetricField hat = hat_metric(A, Q, etaP, cfg.epsilon, cfg.scheme);
  auto fast_eval = [A, Q, etaP, cfg](const Point& p) {
    CheegerTensor ct = cheeger_tensor(A, Q, etaP, cfg, p);
    MatrixXd G = etaP.eval(ct.base);
    MatrixXd g = symmetrize(G * ct.ch);
    if (ct.base.chart != p.chart) {
      // express in the queried chart
      SmoothMap tr{A.total, A.total,
                   [c = p.chart, a = A.total](const Point& q) {
                     return a->to_chart(q, c);
                   }};
      MatrixXd J = jacobian_fixed_charts(tr, ct.base, p.chart, cfg.scheme)
                       .inverse();
      g = J.transpose() * g * J;
    }
    return g;
  };
  auto general_eval = [A, hat, cfg](const Point& p) {
    return general_path_matrix(A, hat, p, cfg.scheme);
  };
  switch (cfg.path) {
    case Path::fast:
      return MetricField{A.total, fast_eval};
    case Path::general:
      return MetricField{A.total, general_eval};
    case Path::both:
    default:
      return MetricField{A.total,
                         [fast_eval, general_eval, deviation_out](const Point& p) {
                           MatrixXd g = general_eval(p);
                           MatrixXd f = fast_eval(p);
                           double dev = max_abs(g - f);
                           if (deviation_out && dev > *deviation_out)
                             *deviation_out = dev;
                           return g;
                         }};
  }
}

double path_deviation(const ActionSpec& A, const MetricField& Q,
                      const MetricField& etaP, double epsilon,
                      const DerivativeScheme& scheme, int n_samples,
                      std::uint64_t seed) {
  DeformationConfig cfg;
  cfg.epsilon = epsilon;
  cfg.scheme = scheme;
  cfg.path = DeformationConfig::Path::general;
  MetricField general = deformed_metric(A, Q, etaP, cfg);
  cfg.path = DeformationConfig::Path::fast;
  MetricField fast = deformed_metric(A, Q, etaP, cfg);
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    Point p = A.total->canonicalize(A.sample_total(rng));
    worst = std::max(worst, max_abs(general.eval(p) - fast.eval(p)));
  }
  return worst;
}

std::vector<CollapseRow> collapse_sweep(const ActionSpec& A, const MetricField& Q,
                                        const MetricField& etaP,
                                        const std::vector<double>& eps_grid,
                                        const std::vector<Point>& sample_points,
                                        const DerivativeScheme& scheme) {
  for (size_t i = 1; i < eps_grid.size(); ++i)
    if (eps_grid[i] <= eps_grid[i - 1] || eps_grid[0] <= 0.0)
      raise(ErrorKind::NumericFailure, "cheeger",
            "collapse sweep needs a positive ascending epsilon grid");
  std::vector<CollapseRow> rows;
  for (size_t pi = 0; pi < sample_points.size(); ++pi) {
    Point p = A.total->canonicalize(sample_points[pi]);
    MatrixXd O = orbit_tangent_matrix(A, p, scheme);
    MatrixXd N = normal_space_basis(A, etaP, p, scheme);
    for (double eps : eps_grid) {
      DeformationConfig cfg;
      cfg.epsilon = eps;
      cfg.scheme = scheme;
      cfg.path = DeformationConfig::Path::general;
      MetricField ge = deformed_metric(A, Q, etaP, cfg);
      MatrixXd g = ge.eval(p);
      CollapseRow row;
      row.epsilon = eps;
      row.point_index = static_cast<int>(pi);
      for (int c = 0; c < O.cols(); ++c)
        row.orbit_norm_sq.push_back((O.col(c).transpose() * g * O.col(c))(0));
      for (int c = 0; c < N.cols(); ++c)
        row.normal_norm_sq.push_back((N.col(c).transpose() * g * N.col(c))(0));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace cheegerlab
