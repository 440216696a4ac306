#include "ouc/baselines/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "ouc/lti/interconnect.hpp"
#include "ouc/lti/realize.hpp"
#include "ouc/lti/riccati.hpp"

namespace ouc::baselines {

using poly::Polynomial;

LqrDesign design_lqr(const vessel::PlantModel& plant, const LqrWeights& w) {
  for (double v : {w.q_phi, w.q_psi, w.r1, w.r2}) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("LQR weights must be finite and nonnegative");
  }
  if (!(w.r1 > 0.0 && w.r2 > 0.0)) throw std::invalid_argument("LQR control weights must be positive");
  LqrDesign d;
  d.weights = w;
  d.plant = vessel::plant_state_space(plant);
  d.Q = d.plant.C.transpose() * Eigen::Vector2d(w.q_phi, w.q_psi).asDiagonal() * d.plant.C;
  d.R = Eigen::Vector2d(w.r1, w.r2).asDiagonal();
  const auto sol = lti::solve_care(d.plant.A, d.plant.B, d.Q, d.R);
  d.K = sol.K;
  d.P = sol.P;
  d.residual = sol.residual;
  d.margin = sol.margin;
  return d;
}

lti::StateSpace lqr_closed_loop(const LqrDesign& design) { return lti::state_feedback_loop(design.plant, design.K); }

std::string to_string(NotchRouting r) { return r == NotchRouting::Rudder ? "rudder" : "fin"; }

NotchRouting notch_routing_from_string(const std::string& s) {
  if (s == "rudder" || s == "u1") return NotchRouting::Rudder;
  if (s == "fin" || s == "u2") return NotchRouting::Fin;
  throw std::invalid_argument("notch routing must be \"rudder\" or \"fin\", got \"" + s + "\"");
}

NotchController notch_controller(NotchRouting routing, double gain, double center, double damping) {
  if (!std::isfinite(gain)) throw std::invalid_argument("notch gain must be finite");
  if (!(center > 0.0) || !std::isfinite(center)) throw std::invalid_argument("notch center must be positive");
  if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("notch damping must lie in [0, 1)");
  NotchController c;
  c.gain = gain;
  c.center = center;
  c.damping = damping;
  c.routing = routing;
  const Polynomial num = Polynomial{center * center, 2.0 * damping * center, 1.0} * gain;
  const Polynomial den{center * center, 2.0 * center, 1.0};
  c.tf = poly::RationalMatrix(poly::MatrixPolynomial(1, 1, {num}), den);
  return c;
}

lti::StateSpace notch_state_space(const NotchController& c) {
  const auto one = lti::realize_canonical(c.tf);
  const int k = c.routing == NotchRouting::Rudder ? 0 : 1;
  lti::StateSpace ss;
  ss.A = one.A;
  ss.B = Eigen::MatrixXd::Zero(one.states(), 2);
  ss.B.col(0) = one.B.col(0);
  ss.C = Eigen::MatrixXd::Zero(2, one.states());
  ss.C.row(k) = one.C.row(0);
  ss.D = Eigen::MatrixXd::Zero(2, 2);
  ss.D(k, 0) = one.D(0, 0);
  ss.validate();
  return ss;
}

}  // namespace ouc::baselines
