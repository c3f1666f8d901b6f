#include "cheegerlab/derivatives.hpp"

namespace cheegerlab {

namespace {
// Step scale for second differences: the field being differentiated twice is
// often itself FD-computed, so a larger step keeps roundoff amplification in
// check. Convergence tests pin the resulting accuracy.
constexpr double kSecondStepScale = 20.0;
}  // namespace

VectorXd map_coords(const SmoothMap& f, int source_chart, const VectorXd& x,
                    int target_chart) {
  if (!f.source->in_domain(source_chart, x))
    raise(ErrorKind::StencilEscape, "smoothcalc",
          f.source->name() + ": stencil point left chart " +
              std::to_string(source_chart));
  Point q = f.eval(Point{source_chart, x});
  return f.target->to_chart(q, target_chart).x;
}

namespace {

MatrixXd jacobian_impl(const SmoothMap& f, const Point& p0, int target_chart,
                       const DerivativeScheme& scheme) {
  const int n = f.source->dim();
  const int m = f.target->dim();
  MatrixXd J(m, n);
  VectorXd x = p0.x;
  for (int j = 0; j < n; ++j) {
    double h = scheme.step_for(x[j]);
    auto at = [&](double t) {
      VectorXd y = x;
      y[j] += t;
      return map_coords(f, p0.chart, y, target_chart);
    };
    if (scheme.stencil_order == 2) {
      J.col(j) = (at(h) - at(-h)) / (2.0 * h);
    } else {
      J.col(j) =
          (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
    }
  }
  return J;
}

}  // namespace

MatrixXd jacobian(const SmoothMap& f, const Point& p,
                  const DerivativeScheme& scheme) {
  Point p0 = f.source->canonicalize(p);
  Point q0 = (f)(p0);
  return jacobian_impl(f, p0, q0.chart, scheme);
}

MatrixXd jacobian_in_chart(const SmoothMap& f, const Point& p, int target_chart,
                           const DerivativeScheme& scheme) {
  Point p0 = f.source->canonicalize(p);
  return jacobian_impl(f, p0, target_chart, scheme);
}

MatrixXd jacobian_fixed_charts(const SmoothMap& f, const Point& p,
                               int target_chart,
                               const DerivativeScheme& scheme) {
  return jacobian_impl(f, p, target_chart, scheme);
}

std::vector<MatrixXd> first_partials(const MatrixFn& F, const VectorXd& x,
                                     const DerivativeScheme& scheme) {
  const int n = static_cast<int>(x.size());
  std::vector<MatrixXd> out(n);
  for (int j = 0; j < n; ++j) {
    double h = scheme.step_for(x[j]);
    auto at = [&](double t) {
      VectorXd y = x;
      y[j] += t;
      return F(y);
    };
    if (scheme.stencil_order == 2)
      out[j] = (at(h) - at(-h)) / (2.0 * h);
    else
      out[j] =
          (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
  }
  return out;
}

namespace {

// d/dx_i of (d/dx_j F) with both stages at the scheme's order.
MatrixXd cross_partial(const MatrixFn& F, const VectorXd& x, int i, int j,
                       double hi, double hj, const DerivativeScheme& scheme) {
  auto dj_at = [&](double ti) {
    VectorXd y = x;
    y[i] += ti;
    auto at = [&](double tj) {
      VectorXd z = y;
      z[j] += tj;
      return F(z);
    };
    if (scheme.stencil_order == 2) return MatrixXd((at(hj) - at(-hj)) / (2.0 * hj));
    return MatrixXd((-at(2.0 * hj) + 8.0 * at(hj) - 8.0 * at(-hj) + at(-2.0 * hj)) /
                    (12.0 * hj));
  };
  if (scheme.stencil_order == 2)
    return (dj_at(hi) - dj_at(-hi)) / (2.0 * hi);
  return (-dj_at(2.0 * hi) + 8.0 * dj_at(hi) - 8.0 * dj_at(-hi) + dj_at(-2.0 * hi)) /
         (12.0 * hi);
}

}  // namespace

std::vector<std::vector<MatrixXd>> second_partials(
    const MatrixFn& F, const VectorXd& x, const DerivativeScheme& scheme) {
  const int n = static_cast<int>(x.size());
  MatrixXd F0 = F(x);
  std::vector<std::vector<MatrixXd>> H(n, std::vector<MatrixXd>(n));
  double scale = std::max(1.0, F0.size() ? F0.cwiseAbs().maxCoeff() : 0.0);
  for (int i = 0; i < n; ++i) {
    double hi = kSecondStepScale * scheme.step_for(x[i]);
    // diagonal entry
    auto at = [&](double t) {
      VectorXd y = x;
      y[i] += t;
      return F(y);
    };
    if (scheme.stencil_order == 2) {
      H[i][i] = (at(hi) - 2.0 * F0 + at(-hi)) / (hi * hi);
    } else {
      H[i][i] = (-at(2.0 * hi) + 16.0 * at(hi) - 30.0 * F0 + 16.0 * at(-hi) -
                 at(-2.0 * hi)) /
                (12.0 * hi * hi);
    }
    for (int j = i + 1; j < n; ++j) {
      double hj = kSecondStepScale * scheme.step_for(x[j]);
      MatrixXd a = cross_partial(F, x, i, j, hi, hj, scheme);
      MatrixXd b = cross_partial(F, x, j, i, hj, hi, scheme);
      double dev = (a - b).cwiseAbs().maxCoeff();
      if (dev > 1e-8 * scale + 1e-8)
        raise(ErrorKind::NumericFailure, "smoothcalc",
              "second partials asymmetric beyond tolerance", dev);
      H[i][j] = 0.5 * (a + b);
      H[j][i] = H[i][j];
    }
  }
  return H;
}

TangentVector lie_bracket(const VectorField& X, const VectorField& Y,
                          const Point& p, const DerivativeScheme& scheme) {
  Point p0 = X.atlas->canonicalize(p);
  const int n = X.atlas->dim();
  auto comp_fn = [&](const VectorField& V) {
    return [&V, &p0, a = X.atlas](const VectorXd& x) -> MatrixXd {
      if (!a->in_domain(p0.chart, x))
        raise(ErrorKind::StencilEscape, "smoothcalc",
              "vector-field stencil left the chart");
      return V.eval(Point{p0.chart, x});
    };
  };
  VectorXd Xp = X.eval(p0);
  VectorXd Yp = Y.eval(p0);
  auto JX = first_partials(comp_fn(X), p0.x, scheme);
  auto JY = first_partials(comp_fn(Y), p0.x, scheme);
  VectorXd out = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    out += Xp[j] * JY[j].col(0) - Yp[j] * JX[j].col(0);
  return TangentVector{p0, out};
}

}  // namespace cheegerlab
