#pragma once

#include <string>

#include "ouc/lti/state_space.hpp"
#include "ouc/poly/rational_matrix.hpp"
#include "ouc/vessel/vessel.hpp"

namespace ouc::baselines {

struct LqrWeights {
  double q_phi = 100.0;
  double q_psi = 1.0;
  double r1 = 0.1;
  double r2 = 0.01;
};

/// State feedback u = -K x on the plant realization, designed with
/// Q = C^T diag(q_phi, q_psi) C and R = diag(r1, r2). The disturbance is
/// ignored at design time.
struct LqrDesign {
  LqrWeights weights;
  lti::StateSpace plant;  ///< realization the gain acts on
  Eigen::MatrixXd Q, R, K, P;
  double residual = 0.0;
  double margin = 0.0;
};

/// Throws RiccatiError; std::invalid_argument for negative or non-finite
/// weights or r1, r2 <= 0.
LqrDesign design_lqr(const vessel::PlantModel& plant, const LqrWeights& weights = {});

/// Input d, output [y; u].
lti::StateSpace lqr_closed_loop(const LqrDesign& design);

enum class NotchRouting { Rudder, Fin };
std::string to_string(NotchRouting r);
NotchRouting notch_routing_from_string(const std::string& s);

/// u_k = W_c(s) e_phi with W_c = gain (s^2 + 2 zeta w0 s + w0^2) / (s + w0)^2,
/// k the rudder (u1) or fin (u2) channel.
struct NotchController {
  double gain = -10.0;
  double center = 1.15;
  double damping = 0.1;
  NotchRouting routing = NotchRouting::Rudder;
  poly::RationalMatrix tf;  ///< 1x1 W_c
};

/// Throws std::invalid_argument for center <= 0 or damping outside [0, 1).
NotchController notch_controller(NotchRouting routing = NotchRouting::Rudder, double gain = -10.0,
                                 double center = 1.15, double damping = 0.1);

/// 2-input (e_phi, e_psi), 2-output (u1, u2) realization.
lti::StateSpace notch_state_space(const NotchController& c);

}  // namespace ouc::baselines
