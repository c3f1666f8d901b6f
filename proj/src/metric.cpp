#include "cheegerlab/metric.hpp"

namespace cheegerlab {

MetricField constant_metric(AtlasPtr atlas, const MatrixXd& g) {
  return MetricField{atlas, [g](const Point&) { return g; }};
}

MetricField round_sphere_metric(AtlasPtr sphere, double radius) {
  const int n = sphere->dim();
  double r2 = radius * radius;
  return MetricField{sphere, [n, r2](const Point& p) {
                       double s = 1.0 + p.x.squaredNorm();
                       return MatrixXd(4.0 * r2 / (s * s) *
                                       MatrixXd::Identity(n, n));
                     }};
}

MetricField product_metric(AtlasPtr product, std::vector<MetricField> parts) {
  return MetricField{
      product, [product, parts](const Point& p) {
        auto split = product_split(*product, p);
        MatrixXd g = MatrixXd::Zero(product->dim(), product->dim());
        const ProductLayout& L = product_layout(*product);
        for (size_t i = 0; i < parts.size(); ++i) {
          int d = L.factors[i]->dim();
          if (d > 0)
            g.block(L.offsets[i], L.offsets[i], d, d) = parts[i].eval(split[i]);
        }
        return g;
      }};
}

MetricField pullback_metric(const SmoothMap& f, const MetricField& g,
                            const DerivativeScheme& scheme) {
  return MetricField{f.source, [f, g, scheme](const Point& p) {
                       Point q = f(p);
                       MatrixXd J = jacobian_fixed_charts(f, p, q.chart, scheme);
                       return MatrixXd(J.transpose() * g.eval(q) * J);
                     }};
}

MetricField induced_base_metric(const SmoothMap& f, const MetricField& total,
                                std::function<Point(const Point&)> section,
                                const DerivativeScheme& scheme) {
  return MetricField{
      f.target, [f, total, section, scheme](const Point& p) {
        Point z = section(p);
        MatrixXd J = jacobian_fixed_charts(f, z, p.chart, scheme);
        MatrixXd G = total.eval(f.source->canonicalize(z));
        return pushforward_metric(J, G, "riemann");
      }};
}

PlaneSection make_plane(const MetricField& g, const Point& base,
                        const VectorXd& u, const VectorXd& v) {
  MatrixXd G = g.eval(base);
  double uu = (u.transpose() * G * u)(0);
  double vv = (v.transpose() * G * v)(0);
  double uv = (u.transpose() * G * v)(0);
  double gram = uu * vv - uv * uv;
  if (gram <= 1e-12)
    raise(ErrorKind::DegeneratePlane, "riemann",
          "plane section is degenerate (Gram determinant too small)", gram);
  return PlaneSection{base, u, v};
}

}  // namespace cheegerlab
