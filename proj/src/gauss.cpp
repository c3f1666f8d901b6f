#include "cheegerlab/gauss.hpp"

#include "cheegerlab/curvature.hpp"

namespace cheegerlab {

VectorXd second_fundamental_form(const SmoothMap& embed,
                                 const MetricField& g_ambient, const Point& z,
                                 const VectorXd& X, const VectorXd& Y,
                                 const DerivativeScheme& scheme) {
  Point zc = embed.source->canonicalize(z);
  Point a0 = embed(zc);
  MatrixXd J = jacobian_fixed_charts(embed, zc, a0.chart, scheme);
  if (smallest_singular_value(J) < 1e-8)
    raise(ErrorKind::RankInstability, "curvpipe",
          "second_fundamental_form at a degenerate embedding point");
  // ambient components of the chart extension of Y along the submanifold
  auto Yamb = [&](const VectorXd& x) -> MatrixXd {
    if (!embed.source->in_domain(zc.chart, x))
      raise(ErrorKind::StencilEscape, "curvpipe",
            "second fundamental form stencil left the chart");
    Point w{zc.chart, x};
    return jacobian_fixed_charts(embed, w, a0.chart, scheme) * Y;
  };
  auto dY = first_partials(Yamb, zc.x, scheme);
  VectorXd deriv = VectorXd::Zero(embed.target->dim());
  for (int i = 0; i < zc.x.size(); ++i) deriv += X[i] * dY[i].col(0);
  auto Gamma = christoffel(g_ambient, a0, scheme);
  VectorXd JX = J * X;
  VectorXd JY = J * Y;
  for (int k = 0; k < deriv.size(); ++k)
    deriv[k] += (JX.transpose() * Gamma[k] * JY)(0);
  // g-normal component relative to the embedded tangent space
  MatrixXd G = g_ambient.eval(a0);
  return deriv - g_projector(J, G) * deriv;
}

}  // namespace cheegerlab
