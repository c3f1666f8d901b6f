#pragma once

#include <Eigen/Dense>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd symmetrize(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

/// Smallest eigenvalue of a symmetric matrix; +inf for 0x0.
inline double min_eigenvalue(const MatrixXd& g) {
  if (g.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrize(g));
  return es.eigenvalues().minCoeff();
}

/// Basis of ker(J) as columns. Absolute singular-value cutoff; values landing
/// in (cutoff, gap_factor*cutoff) mean the rank is not numerically decided
/// and raise RankInstability. A matrix with zero rows has full kernel.
inline MatrixXd kernel_basis(const MatrixXd& J, double cutoff = 1e-8,
                             double gap_factor = 10.0,
                             const char* module = "linalg") {
  const auto n = J.cols();
  if (J.rows() == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeFullV);
  const VectorXd& sv = svd.singularValues();
  int kept = 0;
  for (int i = 0; i < sv.size(); ++i) {
    double s = sv[i];
    if (s > cutoff && s < gap_factor * cutoff)
      raise(ErrorKind::RankInstability, module,
            "singular value " + std::to_string(s) + " inside cutoff band", s);
    if (s > cutoff) ++kept;
  }
  const int k = static_cast<int>(n) - kept;
  MatrixXd K(n, k);
  // Right singular vectors beyond the numerical rank; columns of V past
  // sv.size() (when n > rows) are also kernel directions.
  int col = 0;
  for (int i = 0; i < svd.matrixV().cols(); ++i) {
    bool in_kernel = i >= sv.size() || sv[i] <= cutoff;
    if (in_kernel) K.col(col++) = svd.matrixV().col(i);
  }
  return K;
}

inline double smallest_singular_value(const MatrixXd& J) {
  if (J.rows() == 0 || J.cols() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(J);
  return svd.singularValues().minCoeff();
}

/// G-orthonormalize the columns of B (Gram-Schmidt in the inner product G).
inline MatrixXd g_orthonormalize(const MatrixXd& B, const MatrixXd& G,
                                 double tol = 1e-12) {
  MatrixXd out(B.rows(), B.cols());
  int kept = 0;
  for (int j = 0; j < B.cols(); ++j) {
    VectorXd v = B.col(j);
    for (int i = 0; i < kept; ++i)
      v -= (out.col(i).transpose() * G * v)(0) * out.col(i);
    double n2 = (v.transpose() * G * v)(0);
    if (n2 > tol) out.col(kept++) = v / std::sqrt(n2);
  }
  return out.leftCols(kept);
}

/// Unique g-horizontal preimage operator of a submersion differential:
/// L = G^{-1} J^T (J G^{-1} J^T)^{-1}, so J*(L*u) = u and L*u ⟂_G ker J.
inline MatrixXd horizontal_lift_operator(const MatrixXd& J, const MatrixXd& G,
                                         const char* module = "linalg") {
  if (J.rows() == 0) return MatrixXd::Zero(J.cols(), 0);
  MatrixXd Gi = G.ldlt().solve(MatrixXd::Identity(G.rows(), G.cols()));
  MatrixXd core = J * Gi * J.transpose();
  Eigen::FullPivLU<MatrixXd> lu(core);
  if (!lu.isInvertible())
    raise(ErrorKind::RankInstability, module, "differential is not surjective");
  return Gi * J.transpose() * lu.inverse();
}

/// Metric induced on the base of a submersion with differential J and total
/// metric G: the matrix (J G^{-1} J^T)^{-1}.
inline MatrixXd pushforward_metric(const MatrixXd& J, const MatrixXd& G,
                                   const char* module = "linalg") {
  if (J.rows() == 0) return MatrixXd(0, 0);
  MatrixXd Gi = G.ldlt().solve(MatrixXd::Identity(G.rows(), G.cols()));
  MatrixXd core = J * Gi * J.transpose();
  Eigen::FullPivLU<MatrixXd> lu(core);
  if (!lu.isInvertible())
    raise(ErrorKind::RankInstability, module, "differential is not surjective");
  return symmetrize(lu.inverse());
}

/// G-orthogonal projector onto span(columns of B).
inline MatrixXd g_projector(const MatrixXd& B, const MatrixXd& G) {
  if (B.cols() == 0) return MatrixXd::Zero(G.rows(), G.cols());
  MatrixXd gram = B.transpose() * G * B;
  return B * gram.ldlt().solve(B.transpose() * G);
}

inline double max_abs(const MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace cheegerlab
