#include "cheegerlab/geodesic.hpp"

namespace cheegerlab {

namespace {

VectorXd accel(const MetricField& g, int chart, const VectorXd& x,
               const VectorXd& v, const DerivativeScheme& scheme) {
  if (!g.atlas->in_domain(chart, x))
    raise(ErrorKind::ChartExhausted, "riemann",
          g.atlas->name() + ": geodesic stage left the chart");
  auto Gamma = christoffel(g, Point{chart, x}, scheme);
  const int n = static_cast<int>(x.size());
  VectorXd a(n);
  for (int k = 0; k < n; ++k) a[k] = -(v.transpose() * Gamma[k] * v)(0);
  return a;
}

}  // namespace

std::vector<PathSample> geodesic(const MetricField& g, const Point& p,
                                 const VectorXd& v0, double time, int steps,
                                 const DerivativeScheme& scheme) {
  if (v0.norm() == 0.0)
    raise(ErrorKind::NumericFailure, "riemann", "geodesic with zero velocity");
  if (steps < static_cast<int>(100.0 * time))
    raise(ErrorKind::NumericFailure, "riemann",
          "geodesic needs at least 100 steps per unit time");
  Point cur = g.atlas->canonicalize(p);
  VectorXd v = v0;
  if (cur.chart != p.chart) {
    SmoothMap tr{g.atlas, g.atlas, [c = cur.chart, a = g.atlas](const Point& q) {
                   return a->to_chart(q, c);
                 }};
    v = jacobian_fixed_charts(tr, p, cur.chart, scheme) * v;
  }

  const double dt = time / steps;
  std::vector<PathSample> out;
  out.reserve(steps + 1);
  out.push_back({0.0, cur, v});
  for (int s = 0; s < steps; ++s) {
    const VectorXd x = cur.x;
    // RK4 on (x, v)
    VectorXd k1x = v;
    VectorXd k1v = accel(g, cur.chart, x, v, scheme);
    VectorXd k2x = v + 0.5 * dt * k1v;
    VectorXd k2v = accel(g, cur.chart, x + 0.5 * dt * k1x, k2x, scheme);
    VectorXd k3x = v + 0.5 * dt * k2v;
    VectorXd k3v = accel(g, cur.chart, x + 0.5 * dt * k2x, k3x, scheme);
    VectorXd k4x = v + dt * k3v;
    VectorXd k4v = accel(g, cur.chart, x + dt * k3x, k4x, scheme);
    VectorXd xn = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    VectorXd vn = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!g.atlas->in_domain(cur.chart, xn))
      raise(ErrorKind::ChartExhausted, "riemann",
            g.atlas->name() + ": geodesic left the atlas charts");
    Point next{cur.chart, xn};
    int pref = g.atlas->preferred_chart(next);
    if (pref != next.chart) {
      SmoothMap tr{g.atlas, g.atlas, [pref, a = g.atlas](const Point& q) {
                     return a->to_chart(q, pref);
                   }};
      MatrixXd J = jacobian_fixed_charts(tr, next, pref, scheme);
      next = g.atlas->to_chart(next, pref);
      vn = J * vn;
    }
    cur = next;
    v = vn;
    out.push_back({(s + 1) * dt, cur, v});
  }
  return out;
}

double speed_drift(const MetricField& g, const std::vector<PathSample>& path) {
  double s0 = g.norm(path.front().p, path.front().v);
  double worst = 0.0;
  for (const auto& ps : path) {
    double s = g.norm(ps.p, ps.v);
    worst = std::max(worst, std::abs(s - s0) / s0);
  }
  return worst;
}

double transnormality_check(
    const MetricField& g,
    const std::function<std::vector<VectorXd>(const Point&)>& orbit_basis,
    const Point& p, const VectorXd& v, double time, int steps,
    const DerivativeScheme& scheme) {
  auto path = geodesic(g, p, v, time, steps, scheme);
  double worst = 0.0;
  for (const auto& ps : path) {
    MatrixXd G = g.eval(ps.p);
    double vnorm = std::sqrt((ps.v.transpose() * G * ps.v)(0));
    for (const VectorXd& e : orbit_basis(ps.p)) {
      double en = std::sqrt((e.transpose() * G * e)(0));
      if (en < 1e-14) continue;
      double ip = std::abs((ps.v.transpose() * G * e)(0)) / (vnorm * en);
      worst = std::max(worst, ip);
    }
  }
  return worst;
}

}  // namespace cheegerlab
