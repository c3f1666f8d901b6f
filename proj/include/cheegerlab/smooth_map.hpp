#pragma once

#include <functional>

#include "cheegerlab/atlas.hpp"

namespace cheegerlab {

/// A smooth map between atlases, evaluated pointwise in chart coordinates.
/// eval may return the image in any chart of the target atlas; callers that
/// differentiate re-express stencil images in one fixed chart.
struct SmoothMap {
  AtlasPtr source;
  AtlasPtr target;
  std::function<Point(const Point&)> eval;

  Point operator()(const Point& p) const { return target->canonicalize(eval(p)); }
};

inline SmoothMap identity_map(AtlasPtr a) {
  return SmoothMap{a, a, [](const Point& p) { return p; }};
}

inline SmoothMap compose(const SmoothMap& g, const SmoothMap& f) {
  auto ge = g.eval;
  auto fe = f.eval;
  auto mid = f.target;
  return SmoothMap{f.source, g.target, [ge, fe, mid](const Point& p) {
                     return ge(mid->canonicalize(fe(p)));
                   }};
}

inline SmoothMap constant_map(AtlasPtr src, AtlasPtr dst, Point value) {
  return SmoothMap{src, dst, [value](const Point&) { return value; }};
}

/// A vector field: chart components at the queried point, in that point's
/// chart basis.
struct VectorField {
  AtlasPtr atlas;
  std::function<VectorXd(const Point&)> eval;
};

}  // namespace cheegerlab
