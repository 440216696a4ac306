#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ouc/lti/state_space.hpp"
#include "ouc/poly/matrix_polynomial.hpp"
#include "ouc/vessel/vessel.hpp"

namespace ouc::synth {

using poly::MatrixPolynomial;
using poly::Polynomial;

/// F = alpha e_phi^2 + beta e_psi^2 + gamma1 u1^2 + gamma2 u2^2.
struct CostWeights {
  double alpha = 2.0;
  double beta = 1.0;
  double gamma1 = 10.0;
  double gamma2 = 2.0;

  /// Finite and nonnegative; throws std::invalid_argument.
  void validate() const;
  Eigen::Matrix2d Fyy() const { return Eigen::Vector2d(alpha, beta).asDiagonal(); }
  Eigen::Matrix2d Fuu() const { return Eigen::Vector2d(gamma1, gamma2).asDiagonal(); }
  /// diag(alpha, beta, gamma1, gamma2), acting on [y; u].
  Eigen::Matrix4d F_hat() const;
};

struct InterpolationTarget {
  double omega = 0.0;
  Eigen::MatrixXcd R;   ///< 2x3, optimal d -> u response
  Eigen::MatrixXcd Pi;  ///< 2x2 Hermitian
};

/// Pi(iw) = W^* diag(alpha, beta) W + diag(gamma1, gamma2), W = W_yu0(iw).
Eigen::MatrixXcd compute_pi(const vessel::PlantModel& plant, const CostWeights& w, double omega);

/// 200 log-spaced points on [1e-3, 1e3] plus the given frequencies.
std::vector<double> validation_grid(const std::vector<double>& freqs);

struct FrequencyCondition {
  double epsilon = 0.0;  ///< min eigenvalue of Pi over the grid
  double omega_at_min = 0.0;
  bool passed = false;
};

FrequencyCondition frequency_condition_check(const vessel::PlantModel& plant, const CostWeights& w,
                                             const std::vector<double>& freqs);

/// Appends w = 0 when absent. Throws std::invalid_argument for negative,
/// non-finite or repeated frequencies.
std::vector<double> with_zero_frequency(const std::vector<double>& freqs);

/// R_j = -Pi^-1 W_yu0^* Fyy W_yd0 at each frequency.
std::vector<InterpolationTarget> compute_targets(const vessel::PlantModel& plant, const CostWeights& w,
                                                 const std::vector<double>& freqs);

/// (s + mu)^k / mu^k with k = deg Delta + 2p + 1.
Polynomial default_rho(int deg_delta, int p, double mu = 1.7);

/// Entries of degree <= 2p with r(iw_j) = rho R_j W_yd0^+ / D(iw_j), D the
/// denominator of W_yu0 (Delta). Exactly one target must sit at w = 0.
/// Throws SynthesisError (step "solve_r").
MatrixPolynomial solve_r(const vessel::PlantModel& plant, const std::vector<InterpolationTarget>& targets,
                         const Polynomial& rho);

enum class Status { Optimal, Failed };
std::string to_string(Status s);

struct Certificate {
  Status status = Status::Failed;
  bool stable = false;
  double stability_margin = 0.0;
  bool rho_hurwitz = false;
  std::vector<double> frequencies;
  std::vector<double> residuals;  ///< ||W_ud(iw_j) - R_j||_F
  bool interpolation_ok = false;
  double pi_min_eig = 0.0;
  bool pi_ok = false;
  std::vector<std::string> diagnostics;
};

inline constexpr double kInterpolationTolerance = 1e-8;
/// Closed-loop eigenvalues must satisfy Re < -kStabilityThreshold.
inline constexpr double kStabilityThreshold = 1e-6;

/// Controller N(s) u = M(s) y.
struct OucController {
  MatrixPolynomial N, M, r;
  Polynomial rho;
  std::vector<double> frequencies;
  Certificate certificate;
};

/// M = D r, N = (M W_yu0 numerators) / D + rho I = r (W_yu0 numerators) + rho I,
/// with D the W_yu0 denominator.
/// Throws SynthesisError (step "assemble") when the division leaves a
/// remainder above 1e-9 relative or the result is not proper.
OucController assemble_controller(const vessel::PlantModel& plant, const MatrixPolynomial& r,
                                  const Polynomial& rho);

lti::StateSpace controller_state_space(const OucController& ctrl);

Certificate verify_certificate(const vessel::PlantModel& plant, const OucController& ctrl,
                               const std::vector<InterpolationTarget>& targets, const CostWeights& w);

struct SynthesisOptions {
  double mu = 1.7;
  std::optional<Polynomial> rho;  ///< overrides the default (s + mu)^k / mu^k
};

/// Full pipeline. A failed certificate is returned, not thrown; refusals
/// before assembly (frequency condition, target or coefficient solve) throw
/// SynthesisError naming the step.
OucController synthesize(const vessel::PlantModel& plant, const CostWeights& w, const std::vector<double>& freqs,
                         const SynthesisOptions& options = {});

/// Real coefficients of r stacked entry by entry (row-major), ascending degree,
/// padded to degree 2p.
Eigen::VectorXd r_coefficients(const MatrixPolynomial& r, int degree);

}  // namespace ouc::synth
