#include "cheegerlab/atlas.hpp"

#include <cmath>
#include <numbers>

namespace cheegerlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCircleHalfWidth = 2.7;
constexpr double kSphereChartRadius = 2.5;
}  // namespace

// ----------------------------------------------------------------- point ---

AtlasPtr point_atlas() {
  return std::make_shared<ChartAtlas>(
      "point", 0, 1,
      [](int, const VectorXd&) { return true; },
      [](int, int, const VectorXd& x) { return x; },
      [](int, const VectorXd&) { return 0; });
}

Point point_of(const ChartAtlas& atlas) {
  (void)atlas;
  return Point{0, VectorXd(0)};
}

// ---------------------------------------------------------------- circle ---

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

AtlasPtr circle_atlas() {
  return std::make_shared<ChartAtlas>(
      "circle", 1, 2,
      [](int, const VectorXd& x) {
        return std::abs(x[0]) < kCircleHalfWidth;
      },
      [](int from, int to, const VectorXd& x) {
        if (from == to) return x;
        VectorXd y(1);
        // chart 1 coordinates are offset from chart 0 by pi
        y[0] = wrap_angle(x[0] + (from == 1 ? kPi : -kPi));
        return y;
      },
      [](int chart, const VectorXd& x) {
        double angle = wrap_angle(x[0] + (chart == 1 ? kPi : 0.0));
        return std::abs(angle) <= kPi / 2 ? 0 : 1;
      });
}

double circle_angle(const Point& p) {
  return wrap_angle(p.x[0] + (p.chart == 1 ? kPi : 0.0));
}

Point circle_point(const ChartAtlas& atlas, double angle) {
  double a = wrap_angle(angle);
  Point p;
  if (std::abs(a) <= kPi / 2) {
    p.chart = 0;
    p.x = VectorXd::Constant(1, a);
  } else {
    p.chart = 1;
    p.x = VectorXd::Constant(1, wrap_angle(a - kPi));
  }
  (void)atlas;
  return p;
}

Eigen::Vector2d circle_embed(const Point& p) {
  double a = circle_angle(p);
  return {std::cos(a), std::sin(a)};
}

double circle_tangent_component(const Point& p, const Eigen::Vector2d& v) {
  double a = circle_angle(p);
  return -std::sin(a) * v[0] + std::cos(a) * v[1];
}

// ---------------------------------------------------------------- sphere ---

namespace {

// chart 0: projection from the north pole (+1 in the last coordinate):
//   u = x_{1..n} / (1 - x_{n+1});  chart 1: u = x_{1..n} / (1 + x_{n+1}).
VectorXd sphere_project(const VectorXd& x, int chart) {
  const int n = static_cast<int>(x.size()) - 1;
  double h = x[n];
  double denom = chart == 0 ? (1.0 - h) : (1.0 + h);
  if (std::abs(denom) < 1e-12)
    raise(ErrorKind::ChartExhausted, "smoothcalc",
          "stereographic projection at its pole");
  return x.head(n) / denom;
}

VectorXd sphere_unproject(const VectorXd& u, int chart) {
  const int n = static_cast<int>(u.size());
  double r2 = u.squaredNorm();
  VectorXd x(n + 1);
  x.head(n) = 2.0 * u / (1.0 + r2);
  x[n] = (r2 - 1.0) / (1.0 + r2);
  if (chart == 1) x[n] = -x[n];
  return x;
}

}  // namespace

AtlasPtr sphere_atlas(int n) {
  return std::make_shared<ChartAtlas>(
      "sphere" + std::to_string(n), n, 2,
      [](int, const VectorXd& x) { return x.norm() < kSphereChartRadius; },
      [](int from, int to, const VectorXd& x) {
        if (from == to) return x;
        double r2 = x.squaredNorm();
        if (r2 < 1e-12)
          raise(ErrorKind::ChartExhausted, "smoothcalc",
                "sphere chart overlap map at the pole");
        return VectorXd(x / r2);
      },
      [](int chart, const VectorXd& x) {
        // stay in the chart whose pole is far away
        double r2 = x.squaredNorm();
        double h = (r2 - 1.0) / (r2 + 1.0);
        if (chart == 1) h = -h;
        return h <= 0.0 ? 0 : 1;
      });
}

VectorXd sphere_embed(const Point& p) { return sphere_unproject(p.x, p.chart); }

Point sphere_point_in_chart(const VectorXd& ambient, int chart) {
  return Point{chart, sphere_project(ambient, chart)};
}

Point sphere_point(const ChartAtlas& atlas, const VectorXd& ambient) {
  (void)atlas;
  const int n = static_cast<int>(ambient.size()) - 1;
  int chart = ambient[n] <= 0.0 ? 0 : 1;
  return sphere_point_in_chart(ambient, chart);
}

VectorXd sphere_tangent_to_chart(const VectorXd& x, const VectorXd& v,
                                 int chart) {
  const int n = static_cast<int>(x.size()) - 1;
  double sgn = chart == 0 ? 1.0 : -1.0;
  double denom = 1.0 - sgn * x[n];
  // d(u) = v_head/denom + x_head * sgn * v_h / denom^2
  return v.head(n) / denom + x.head(n) * (sgn * v[n]) / (denom * denom);
}

VectorXd sphere_tangent_to_ambient(const Point& p, const VectorXd& comp) {
  const int n = static_cast<int>(p.x.size());
  double r2 = p.x.squaredNorm();
  double s = 1.0 + r2;
  double udot = 2.0 * p.x.dot(comp);
  VectorXd v(n + 1);
  // derivative of u -> (2u, r^2-1)/(1+r^2)
  v.head(n) = 2.0 * comp / s - 2.0 * p.x * udot / (s * s);
  v[n] = 2.0 * udot / (s * s);
  if (p.chart == 1) v[n] = -v[n];
  return v;
}

// --------------------------------------------------------------- product ---

int ProductLayout::chart_of(const std::vector<int>& factor_charts) const {
  int id = 0;
  for (size_t i = 0; i < factors.size(); ++i)
    id = id * factors[i]->chart_count() + factor_charts[i];
  return id;
}

std::vector<int> ProductLayout::factor_charts(int chart) const {
  std::vector<int> out(factors.size());
  for (size_t i = factors.size(); i-- > 0;) {
    int nc = factors[i]->chart_count();
    out[i] = chart % nc;
    chart /= nc;
  }
  return out;
}

AtlasPtr product_atlas(std::string name, std::vector<AtlasPtr> factors) {
  auto layout = std::make_shared<ProductLayout>();
  layout->factors = factors;
  int dim = 0, charts = 1;
  for (const auto& f : factors) {
    layout->offsets.push_back(dim);
    dim += f->dim();
    charts *= f->chart_count();
  }
  auto L = layout;  // captured by the closures below
  return std::make_shared<ChartAtlas>(
      std::move(name), dim, charts,
      [L](int chart, const VectorXd& x) {
        auto fc = L->factor_charts(chart);
        for (size_t i = 0; i < L->factors.size(); ++i) {
          if (!L->factors[i]->in_domain(
                  fc[i], x.segment(L->offsets[i], L->factors[i]->dim())))
            return false;
        }
        return true;
      },
      [L](int from, int to, const VectorXd& x) {
        auto fc_from = L->factor_charts(from);
        auto fc_to = L->factor_charts(to);
        VectorXd y(x.size());
        for (size_t i = 0; i < L->factors.size(); ++i) {
          int d = L->factors[i]->dim();
          y.segment(L->offsets[i], d) = L->factors[i]->transition(
              fc_from[i], fc_to[i], x.segment(L->offsets[i], d));
        }
        return y;
      },
      [L](int chart, const VectorXd& x) {
        auto fc = L->factor_charts(chart);
        std::vector<int> pref(fc.size());
        for (size_t i = 0; i < L->factors.size(); ++i) {
          Point part{fc[i], x.segment(L->offsets[i], L->factors[i]->dim())};
          pref[i] = L->factors[i]->preferred_chart(part);
        }
        return L->chart_of(pref);
      },
      layout);
}

const ProductLayout& product_layout(const ChartAtlas& atlas) {
  const ProductLayout* l = atlas.layout();
  if (!l)
    raise(ErrorKind::NumericFailure, "smoothcalc",
          atlas.name() + " is not a product atlas");
  return *l;
}

Point product_point(const ChartAtlas& product, const std::vector<Point>& parts) {
  const ProductLayout& L = product_layout(product);
  std::vector<int> fc(parts.size());
  VectorXd x(product.dim());
  for (size_t i = 0; i < parts.size(); ++i) {
    fc[i] = parts[i].chart;
    x.segment(L.offsets[i], L.factors[i]->dim()) = parts[i].x;
  }
  return Point{L.chart_of(fc), x};
}

std::vector<Point> product_split(const ChartAtlas& product, const Point& p) {
  const ProductLayout& L = product_layout(product);
  auto fc = L.factor_charts(p.chart);
  std::vector<Point> out(L.factors.size());
  for (size_t i = 0; i < L.factors.size(); ++i)
    out[i] = Point{fc[i], p.x.segment(L.offsets[i], L.factors[i]->dim())};
  return out;
}

}  // namespace cheegerlab
