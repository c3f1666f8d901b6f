#pragma once

#include "cheegerlab/gmetric_checks.hpp"

namespace cheegerlab {

struct DeformationConfig {
  double epsilon = 1.0;
  DerivativeScheme scheme;
  enum class Path { fast, general, both } path = Path::general;
};

/// Orbit (shape) tensor at p: the matrix of Sh(p) on the kernel basis of
/// D s at the unit arrow, defined by Q(Sh x, y) = eta^P(X*, Y*).
struct ShapeTensor {
  Point base;            // p
  MatrixXd kernel_basis; // columns: basis of ker D_{1} s (arrow chart coords)
  MatrixXd matrix;       // Sh in that basis
  MatrixXd gram_Q;       // Q restricted to the kernel basis
  MatrixXd gram_star;    // eta^P(X_i*, X_j*)
  MatrixXd action_vectors;  // columns X_i* in P chart coords
};

ShapeTensor shape_tensor(const ActionSpec& A, const MetricField& Q,
                         const MetricField& etaP, const Point& p,
                         const DerivativeScheme& scheme);

/// Cheeger tensor at p for the deformation parameter eps: identity on the
/// eta^P-normal space of the orbit, conjugate to (I + eps*Sh)^{-1} on the
/// orbit tangent (through the action-vector correspondence).
struct CheegerTensor {
  Point base;
  MatrixXd ch;      // Ch_eps(p) on T_pP, chart basis
  MatrixXd ch_inv;  // its inverse
  ShapeTensor shape;
};

CheegerTensor cheeger_tensor(const ActionSpec& A, const MetricField& Q,
                             const MetricField& etaP,
                             const DeformationConfig& cfg, const Point& p);

/// Solves X*(x) = orbit-projection of X for the kernel coordinates x
/// (least squares in the action-vector basis; residual above 1e-8 raises
/// NumericFailure per the construction's well-definedness guarantee).
VectorXd recover_kernel_coordinates(const ShapeTensor& sh, const MetricField& etaP,
                                    const VectorXd& X);

/// The unit-arrow lift h(p)(X) = (-eps*Sh(x), X) expressed as an ambient
/// pair, plus its fp-chart representation when tangent. `tangency` is the
/// least-squares defect of expressing the pair in the arrow space: the lift
/// exists as a tangent vector only where the orbit stays inside the moment
/// fiber.
struct UnitLift {
  VectorXd arrow_part;  // -eps * Sh(x), arrow chart coords at the unit
  VectorXd base_part;   // X
  VectorXd fp_vector;   // least-squares fp chart vector
  double tangency = 0.0;
  double horizontality = 0.0;  // eta-hat inner products against (z, Z*) span
};

UnitLift horizontal_lift_h(const ActionSpec& A, const MetricField& Q,
                           const MetricField& etaP, const DeformationConfig& cfg,
                           const Point& p, const VectorXd& X);

/// The product metric (1/eps) Q ⊕ eta^P on G x P restricted to the arrow
/// space G x_M P (pullback through the fp projections).
MetricField hat_metric(const ActionSpec& A, const MetricField& Q,
                       const MetricField& etaP, double epsilon,
                       const DerivativeScheme& scheme);

/// t̄ and s̄ as SmoothMaps on the fp atlas.
SmoothMap tbar_map(const ActionSpec& A);
SmoothMap sbar_map(const ActionSpec& A);

/// The deformed metric on P.
///  - general path: metric induced by the Riemannian submersion
///    t̄: (G x_M P, eta-hat_eps) -> P, lifting at the unit arrow over p.
///  - fast path: eta_eps(u, v) = eta^P(Ch_eps u, v); requires the
///    normal-in-fiber hypothesis flag (HypothesisViolated otherwise).
///  - both: evaluates the general path and records the max deviation from
///    the fast path through `deviation_out` (when provided).
MetricField deformed_metric(const ActionSpec& A, const MetricField& Q,
                            const MetricField& etaP,
                            const DeformationConfig& cfg,
                            std::shared_ptr<double> deviation_out = nullptr);

/// Max |fast - general| entrywise over sampled points for one epsilon.
double path_deviation(const ActionSpec& A, const MetricField& Q,
                      const MetricField& etaP, double epsilon,
                      const DerivativeScheme& scheme, int n_samples,
                      std::uint64_t seed);

/// Collapse sweep: per (eps, point), the eta_eps-norms of the orbit-tangent
/// basis vectors and of the normal basis vectors.
struct CollapseRow {
  double epsilon;
  int point_index;
  std::vector<double> orbit_norm_sq;
  std::vector<double> normal_norm_sq;
};

std::vector<CollapseRow> collapse_sweep(const ActionSpec& A, const MetricField& Q,
                                        const MetricField& etaP,
                                        const std::vector<double>& eps_grid,
                                        const std::vector<Point>& sample_points,
                                        const DerivativeScheme& scheme);

}  // namespace cheegerlab
