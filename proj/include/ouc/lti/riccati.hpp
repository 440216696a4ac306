#pragma once

#include <Eigen/Dense>

namespace ouc::lti {

struct CareSolution {
  Eigen::MatrixXd P;
  /// R^-1 B^T P
  Eigen::MatrixXd K;
  double residual = 0.0;
  /// -max Re eig(A - B K)
  double margin = 0.0;
};

/// Stabilizing solution of A^T P + P A - P B R^-1 B^T P + Q = 0.
/// Stable invariant subspace of the Hamiltonian from an ordered complex Schur
/// form, then Newton-Kleinman refinement. Throws RiccatiError when no
/// stabilizing solution exists or the residual check fails.
CareSolution solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                        const Eigen::MatrixXd& r);

/// Solves A^T X + X A + Q = 0 (Bartels-Stewart on the complex Schur form).
/// Requires lambda_i + lambda_j != 0 for all eigenvalues of A.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q);

/// Riccati residual A^T P + P A - P B R^-1 B^T P + Q.
Eigen::MatrixXd care_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                              const Eigen::MatrixXd& r, const Eigen::MatrixXd& p);

}  // namespace ouc::lti
