#include "cheegerlab/curvature.hpp"

namespace cheegerlab {

std::vector<MatrixXd> christoffel_from_partials(
    const MatrixXd& g0, const std::vector<MatrixXd>& dg) {
  const int n = static_cast<int>(g0.rows());
  MatrixXd gi = g0.ldlt().solve(MatrixXd::Identity(n, n));
  std::vector<MatrixXd> Gamma(n, MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += gi(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        Gamma[k](i, j) = 0.5 * s;
        Gamma[k](j, i) = Gamma[k](i, j);
      }
  return Gamma;
}

std::vector<MatrixXd> christoffel(const MetricField& g, const Point& p,
                                  const DerivativeScheme& scheme) {
  Point p0 = g.atlas->canonicalize(p);
  MatrixXd g0 = g.eval(p0);
  auto dg = first_partials(g.chart_fn(p0.chart), p0.x, scheme);
  return christoffel_from_partials(g0, dg);
}

VectorXd RiemannTensor::apply(const VectorXd& u, const VectorXd& v,
                              const VectorXd& w) const {
  const int n = dim();
  VectorXd out = VectorXd::Zero(n);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += w[k] * (u.transpose() * comp[l][k] * v)(0);
    out[l] = s;
  }
  return out;
}

RiemannTensor riemann_tensor(const MetricField& g, const Point& p,
                             const DerivativeScheme& scheme) {
  Point p0 = g.atlas->canonicalize(p);
  const int n = g.atlas->dim();
  MatrixXd g0 = g.eval(p0);
  MatrixXd gi = g0.ldlt().solve(MatrixXd::Identity(n, n));
  auto fn = g.chart_fn(p0.chart);
  auto dg = first_partials(fn, p0.x, scheme);
  auto d2g = second_partials(fn, p0.x, scheme);

  // dGamma[m][k](i,j) = ∂_m Γ^k_{ij}
  // ∂_m g^{kl} = -g^{ka} ∂_m g_{ab} g^{bl}
  std::vector<MatrixXd> dgi(n);
  for (int m = 0; m < n; ++m) dgi[m] = -gi * dg[m] * gi;

  auto Gamma = christoffel_from_partials(g0, dg);
  std::vector<std::vector<MatrixXd>> dGamma(n,
                                            std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += dgi[m](k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
            s += gi(k, l) *
                 (d2g[m][i](j, l) + d2g[m][j](i, l) - d2g[m][l](i, j));
          }
          dGamma[m][k](i, j) = 0.5 * s;
          dGamma[m][k](j, i) = dGamma[m][k](i, j);
        }

  RiemannTensor R;
  R.comp.assign(n, std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = dGamma[i][l](j, k) - dGamma[j][l](i, k);
          for (int m = 0; m < n; ++m)
            s += Gamma[l](i, m) * Gamma[m](j, k) -
                 Gamma[l](j, m) * Gamma[m](i, k);
          R.comp[l][k](i, j) = s;
        }
  return R;
}

double curvature_K(const MetricField& g, const PlaneSection& plane,
                   const DerivativeScheme& scheme, bool normalized) {
  Point p0 = g.atlas->canonicalize(plane.base);
  // components follow the base point to its preferred chart if needed
  VectorXd u = plane.u, v = plane.v;
  if (p0.chart != plane.base.chart) {
    SmoothMap tr{g.atlas, g.atlas, [c = p0.chart, a = g.atlas](const Point& q) {
                   return a->to_chart(q, c);
                 }};
    MatrixXd J = jacobian_fixed_charts(tr, plane.base, p0.chart, scheme);
    u = J * u;
    v = J * v;
  }
  MatrixXd G = g.eval(p0);
  double uu = (u.transpose() * G * u)(0);
  double vv = (v.transpose() * G * v)(0);
  double uv = (u.transpose() * G * v)(0);
  double gram = uu * vv - uv * uv;
  if (gram <= 1e-12)
    raise(ErrorKind::DegeneratePlane, "riemann",
          "sectional curvature of a degenerate plane", gram);
  RiemannTensor R = riemann_tensor(g, p0, scheme);
  double K = (u.transpose() * G * R.apply(u, v, v))(0);
  return normalized ? K / gram : K;
}

double curvature_K_unnormalized_lenient(const MetricField& g, const Point& p,
                                        const VectorXd& u_in, const VectorXd& v_in,
                                        const DerivativeScheme& scheme) {
  if (g.atlas->dim() < 2 || u_in.norm() == 0.0 || v_in.norm() == 0.0) return 0.0;
  Point p0 = g.atlas->canonicalize(p);
  VectorXd u = u_in, v = v_in;
  if (p0.chart != p.chart) {
    SmoothMap tr{g.atlas, g.atlas, [c = p0.chart, a = g.atlas](const Point& q) {
                   return a->to_chart(q, c);
                 }};
    MatrixXd J = jacobian_fixed_charts(tr, p, p0.chart, scheme);
    u = J * u;
    v = J * v;
  }
  MatrixXd G = g.eval(p0);
  double uu = (u.transpose() * G * u)(0);
  double vv = (v.transpose() * G * v)(0);
  double uv = (u.transpose() * G * v)(0);
  if (uu * vv - uv * uv <= 1e-12 * std::max(1.0, uu * vv)) return 0.0;
  RiemannTensor R = riemann_tensor(g, p0, scheme);
  return (u.transpose() * G * R.apply(u, v, v))(0);
}

}  // namespace cheegerlab
