#pragma once

#include "cheegerlab/metric.hpp"

namespace cheegerlab {

/// Christoffel symbols at p: Gamma[k](i, j) = Γ^k_{ij}, symmetric in (i, j).
std::vector<MatrixXd> christoffel(const MetricField& g, const Point& p,
                                  const DerivativeScheme& scheme);

/// Same from a precomputed metric value and first partials.
std::vector<MatrixXd> christoffel_from_partials(
    const MatrixXd& g0, const std::vector<MatrixXd>& dg);

/// Curvature operator R(u, v)w at p, with the convention
/// R(∂i,∂j)∂k = (∂iΓ^l_{jk} − ∂jΓ^l_{ik} + Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik}) ∂l,
/// which makes <R(u,v)v,u> positive on round spheres.
struct RiemannTensor {
  // R[l][k](i, j) = R^l_{kij}
  std::vector<std::vector<MatrixXd>> comp;
  int dim() const { return static_cast<int>(comp.size()); }
  VectorXd apply(const VectorXd& u, const VectorXd& v, const VectorXd& w) const;
};

RiemannTensor riemann_tensor(const MetricField& g, const Point& p,
                             const DerivativeScheme& scheme);

/// Sectional curvature of the plane. Unnormalized: K = <R(u,v)v,u>.
/// With `normalized`, divides by |u|^2 |v|^2 - <u,v>^2 (DegeneratePlane when
/// that Gram determinant is below tolerance).
double curvature_K(const MetricField& g, const PlaneSection& plane,
                   const DerivativeScheme& scheme, bool normalized);

/// Unnormalized K allowing degenerate (parallel) arguments, for which the
/// antisymmetry of R makes the value 0. Used by curvature decompositions on
/// low-dimensional factors.
double curvature_K_unnormalized_lenient(const MetricField& g, const Point& p,
                                        const VectorXd& u, const VectorXd& v,
                                        const DerivativeScheme& scheme);

}  // namespace cheegerlab
