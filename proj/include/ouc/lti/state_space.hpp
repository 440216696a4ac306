#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ouc::lti {

/// x' = A x + B u + E d,  y = C x + D u + G d.
/// E and G may be empty (zero columns) when there is no disturbance channel.
struct StateSpace {
  Eigen::MatrixXd A, B, C, D, E, G;

  int states() const { return static_cast<int>(A.rows()); }
  int inputs() const { return static_cast<int>(B.cols()); }
  int outputs() const { return static_cast<int>(C.rows()); }
  int disturbances() const { return static_cast<int>(E.cols()); }

  /// Throws std::invalid_argument on inconsistent dimensions. Empty E/G are
  /// normalized to n x 0 / k x 0.
  void validate();
  void validate() const;

  /// C (sI - A)^-1 B + D.
  Eigen::MatrixXcd response(std::complex<double> s) const;
  /// C (sI - A)^-1 E + G.
  Eigen::MatrixXcd disturbance_response(std::complex<double> s) const;
};

/// Relative distance from the imaginary axis below which an eigenvalue is
/// treated as marginal rather than stable.
inline constexpr double kAxisTolerance = 1e-10;

struct StabilityReport {
  bool stable = false;
  /// -max Re(eig A); +infinity for a static system.
  double margin = 0.0;
  Eigen::VectorXcd eigenvalues;
};

StabilityReport is_stable(const StateSpace& ss);
StabilityReport is_stable(const Eigen::MatrixXd& a);

}  // namespace ouc::lti
