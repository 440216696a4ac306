#pragma once

#include <Eigen/Dense>

namespace ouc::poly {

struct LinearSolution {
  Eigen::MatrixXcd x;
  /// 1-norm condition number of A.
  double condition = 0.0;
};

inline constexpr double kMaxCondition = 1e12;

/// Solves A x = b. Throws IllConditionedError when A is singular or its
/// condition number exceeds kMaxCondition.
LinearSolution solve_complex_linear(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Moore-Penrose pseudo-inverse via SVD, singular values below
/// tol * sigma_max treated as zero.
Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, double tol = 1e-12);

}  // namespace ouc::poly
