#pragma once

#include <Eigen/Dense>

#include "ouc/lti/state_space.hpp"
#include "ouc/waves/disturbance.hpp"

namespace ouc::lti {

/// Samples at t_k = k h, k = 0..steps. Row k of each matrix is sample k.
struct SimTrace {
  double h = 0.0;
  Eigen::VectorXd t;
  Eigen::MatrixXd x;  ///< empty unless states were requested
  Eigen::MatrixXd y;
  Eigen::MatrixXd d;
};

struct SimOptions {
  bool record_states = false;
  /// Initial state; zero when empty.
  Eigen::VectorXd x0;
};

/// Simulates x' = A x + B d, y = C x + D d, with d the polyharmonic spec
/// (the input of `ss` is the disturbance). Each harmonic is carried by an
/// exosystem (a rotation pair, or a constant for w = 0) and every step is
/// advanced with the exact matrix exponential of the augmented system, so the
/// only error is that of the exponential itself.
/// Throws std::invalid_argument for h <= 0 or T < 0, DivergenceError if the
/// state becomes non-finite or exceeds 1e150.
SimTrace simulate(const StateSpace& ss, const waves::DisturbanceSpec& spec, double T, double h,
                  const SimOptions& options = {});

}  // namespace ouc::lti
