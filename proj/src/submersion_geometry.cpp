#include "cheegerlab/submersion_geometry.hpp"

#include "cheegerlab/curvature.hpp"

namespace cheegerlab {

VHSplit vh_split(const SmoothMap& f, const MetricField& g_total, const Point& z,
                 const VectorXd& v, const DerivativeScheme& scheme) {
  Point zc = f.source->canonicalize(z);
  Point q = f(zc);
  MatrixXd J = jacobian_fixed_charts(f, zc, q.chart, scheme);
  if (J.rows() > 0 && smallest_singular_value(J) < 1e-6)
    raise(ErrorKind::RankInstability, "curvpipe",
          "vh_split at a non-submersion point", smallest_singular_value(J));
  MatrixXd G = g_total.eval(zc);
  MatrixXd K = kernel_basis(J, 1e-8, 10.0, "curvpipe");
  VHSplit out;
  if (K.cols() == 0) {
    out.vertical = VectorXd::Zero(v.size());
    out.horizontal = v;
    return out;
  }
  out.vertical = g_projector(K, G) * v;
  out.horizontal = v - out.vertical;
  return out;
}

VectorXd horizontal_lift_at(const SmoothMap& f, const MetricField& g_total,
                            const Point& z, const VectorXd& u,
                            const DerivativeScheme& scheme) {
  Point zc = f.source->canonicalize(z);
  Point q = f(zc);
  MatrixXd J = jacobian_fixed_charts(f, zc, q.chart, scheme);
  MatrixXd G = g_total.eval(zc);
  return horizontal_lift_operator(J, G, "curvpipe") * u;
}

VectorField basic_horizontal_field(const SmoothMap& f, const MetricField& g_total,
                                   const Point& z0, const VectorXd& u,
                                   const DerivativeScheme& scheme) {
  Point zc = f.source->canonicalize(z0);
  int base_chart = f(zc).chart;
  return VectorField{
      f.source, [f, g_total, u, base_chart, scheme](const Point& z) {
        // constant field in the fixed base chart, lifted pointwise; the
        // composite is basis-free and smooth wherever the rank is stable
        MatrixXd J = jacobian_fixed_charts(f, z, base_chart, scheme);
        MatrixXd G = g_total.eval(z);
        return VectorXd(horizontal_lift_operator(J, G, "curvpipe") * u);
      }};
}

VectorXd a_tensor(const SmoothMap& f, const MetricField& g_total, const Point& z,
                  const VectorXd& X, const VectorXd& Y,
                  const DerivativeScheme& scheme) {
  Point zc = f.source->canonicalize(z);
  Point q = f(zc);
  MatrixXd J = jacobian_fixed_charts(f, zc, q.chart, scheme);
  // horizontality preconditions
  {
    MatrixXd G = g_total.eval(zc);
    MatrixXd K = kernel_basis(J, 1e-8, 10.0, "curvpipe");
    if (K.cols() > 0) {
      double rx = K.cols() ? (K.transpose() * G * X).cwiseAbs().maxCoeff() : 0.0;
      double ry = K.cols() ? (K.transpose() * G * Y).cwiseAbs().maxCoeff() : 0.0;
      double scale = std::max(1.0, std::max(X.norm(), Y.norm()));
      if (rx > 1e-6 * scale || ry > 1e-6 * scale)
        raise(ErrorKind::ConstraintViolation, "curvpipe",
              "a_tensor arguments are not horizontal", std::max(rx, ry));
    }
  }
  VectorField Xf = basic_horizontal_field(f, g_total, zc, J * X, scheme);
  VectorField Yf = basic_horizontal_field(f, g_total, zc, J * Y, scheme);
  TangentVector br = lie_bracket(Xf, Yf, zc, scheme);
  VHSplit sp = vh_split(f, g_total, zc, br.components, scheme);
  return 0.5 * sp.vertical;
}

ONeillReport oneill_check(const SmoothMap& f, const MetricField& g_total,
                          const MetricField& g_base, const Point& z,
                          const VectorXd& u, const VectorXd& v,
                          const DerivativeScheme& scheme) {
  Point zc = f.source->canonicalize(z);
  Point q = f(zc);
  ONeillReport rep{};
  rep.k_base = curvature_K(g_base, make_plane(g_base, q, u, v), scheme, false);
  VectorXd ut = horizontal_lift_at(f, g_total, zc, u, scheme);
  VectorXd vt = horizontal_lift_at(f, g_total, zc, v, scheme);
  rep.k_total = curvature_K(g_total, make_plane(g_total, zc, ut, vt), scheme, false);
  VectorXd A = a_tensor(f, g_total, zc, ut, vt, scheme);
  MatrixXd G = g_total.eval(zc);
  rep.a_norm_sq = (A.transpose() * G * A)(0);
  rep.residual = std::abs(rep.k_base - rep.k_total - 3.0 * rep.a_norm_sq);
  return rep;
}

}  // namespace cheegerlab
