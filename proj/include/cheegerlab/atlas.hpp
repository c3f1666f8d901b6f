#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class ChartAtlas;
using AtlasPtr = std::shared_ptr<const ChartAtlas>;

/// A point of a manifold: coordinates in one named chart of its atlas.
struct Point {
  int chart = 0;
  VectorXd x;
};

struct TangentVector {
  Point base;
  VectorXd components;  // in the chart basis of base.chart
};

/// A manifold presented as a finite set of coordinate charts with analytic
/// transition maps. Charts are indexed 0..chart_count-1; every admitted
/// point lies in at least one chart domain.
struct ProductLayout;

class ChartAtlas {
 public:
  using DomainFn = std::function<bool(int chart, const VectorXd&)>;
  using TransitionFn =
      std::function<VectorXd(int from, int to, const VectorXd&)>;  // may throw
  using PreferredFn = std::function<int(int chart, const VectorXd&)>;

  ChartAtlas(std::string name, int dim, int chart_count, DomainFn in_domain,
             TransitionFn transition, PreferredFn preferred,
             std::shared_ptr<const ProductLayout> layout = nullptr)
      : name_(std::move(name)),
        dim_(dim),
        chart_count_(chart_count),
        in_domain_(std::move(in_domain)),
        transition_(std::move(transition)),
        preferred_(std::move(preferred)),
        layout_(std::move(layout)) {}

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int chart_count() const { return chart_count_; }

  bool in_domain(int chart, const VectorXd& x) const {
    return in_domain_(chart, x);
  }
  bool contains(const Point& p) const { return in_domain(p.chart, p.x); }

  /// Coordinates of a chart-`from` point in chart `to`.
  /// Throws ChartExhausted when the point is outside the target domain.
  VectorXd transition(int from, int to, const VectorXd& x) const {
    if (from == to) return x;
    VectorXd y = transition_(from, to, x);
    if (!in_domain(to, y))
      raise(ErrorKind::ChartExhausted, "smoothcalc",
            name_ + ": transition " + std::to_string(from) + "->" +
                std::to_string(to) + " leaves the target domain");
    return y;
  }

  int preferred_chart(const Point& p) const { return preferred_(p.chart, p.x); }

  /// Re-express p in its preferred chart.
  Point canonicalize(const Point& p) const {
    int c = preferred_chart(p);
    if (c == p.chart) return p;
    return Point{c, transition(p.chart, c, p.x)};
  }

  Point to_chart(const Point& p, int chart) const {
    if (p.chart == chart) return p;
    return Point{chart, transition(p.chart, chart, p.x)};
  }

  /// Coordinate distance between two points, evaluated in q's chart.
  double distance(const Point& p, const Point& q) const {
    if (dim_ == 0) return 0.0;
    Point pc = to_chart(p, q.chart);
    return (pc.x - q.x).norm();
  }

  const ProductLayout* layout() const { return layout_.get(); }

 private:
  std::string name_;
  int dim_;
  int chart_count_;
  DomainFn in_domain_;
  TransitionFn transition_;
  PreferredFn preferred_;
  std::shared_ptr<const ProductLayout> layout_;
};

// ---------------------------------------------------------------------------
// Concrete atlases used by the scenarios.
// ---------------------------------------------------------------------------

/// 0-dimensional manifold (a single point, one chart, empty coordinates).
AtlasPtr point_atlas();

Point point_of(const ChartAtlas& atlas);  // the unique point of a 0-dim atlas

/// Circle with two overlapping angle charts:
///   chart 0: coordinate t = angle,        |t| < 2.7
///   chart 1: coordinate t = angle - pi,   |t| < 2.7
AtlasPtr circle_atlas();

double wrap_angle(double a);                       // into (-pi, pi]
double circle_angle(const Point& p);               // canonical angle
Point circle_point(const ChartAtlas& atlas, double angle);
/// Chart components of the tangent vector v in R^2 at the embedded point.
double circle_tangent_component(const Point& p, const Eigen::Vector2d& v);
Eigen::Vector2d circle_embed(const Point& p);

/// n-sphere (n = 2 or 3) with the stereographic chart pair:
///   chart 0 projects from the north pole (last ambient coordinate +1),
///   chart 1 from the south pole; domains |u| < 2.5; overlap map u/|u|^2.
AtlasPtr sphere_atlas(int n);

VectorXd sphere_embed(const Point& p);                       // into R^{n+1}
Point sphere_point(const ChartAtlas& atlas, const VectorXd& ambient);
Point sphere_point_in_chart(const VectorXd& ambient, int chart);
/// Chart components of an ambient tangent vector v at ambient point x,
/// in the given chart (closed-form stereographic differential).
VectorXd sphere_tangent_to_chart(const VectorXd& x, const VectorXd& v, int chart);
/// Ambient tangent vector from chart components (inverse differential).
VectorXd sphere_tangent_to_ambient(const Point& p, const VectorXd& comp);

/// Product of atlases; chart ids are mixed-radix over the factors and
/// coordinates are concatenated in factor order.
AtlasPtr product_atlas(std::string name, std::vector<AtlasPtr> factors);

/// Helpers for product atlases.
struct ProductLayout {
  std::vector<AtlasPtr> factors;
  std::vector<int> offsets;  // coordinate offset of each factor
  int chart_of(const std::vector<int>& factor_charts) const;
  std::vector<int> factor_charts(int chart) const;
};
const ProductLayout& product_layout(const ChartAtlas& atlas);  // throws if not a product

Point product_point(const ChartAtlas& product, const std::vector<Point>& parts);
std::vector<Point> product_split(const ChartAtlas& product, const Point& p);

}  // namespace cheegerlab
