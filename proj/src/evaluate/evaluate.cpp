#include "ouc/evaluate/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ouc/errors.hpp"
#include "ouc/lti/interconnect.hpp"
#include "ouc/waves/spectrum.hpp"

namespace ouc::evaluate {

using Complex = std::complex<double>;

namespace {

void require_stable(const lti::StateSpace& cl, const char* who) {
  const auto st = lti::is_stable(cl);
  if (!st.stable) {
    throw InstabilityError(std::string(who) + ": closed loop is unstable (max Re eig = " +
                               std::to_string(-st.margin) + ")",
                           st.margin);
  }
}

void check_loop_shape(const lti::StateSpace& cl, const waves::DisturbanceSpec& spec) {
  if (cl.outputs() != 4) throw std::invalid_argument("closed loop must have outputs [e_phi, e_psi, u1, u2]");
  if (!spec.frequencies.empty() && spec.channels() != cl.inputs()) {
    throw std::invalid_argument("disturbance channels do not match the closed-loop input");
  }
}

void finish(CostReport& r) { r.J_total = r.J_roll + r.J_yaw + r.J_u1 + r.J_u2; }

}  // namespace

lti::StateSpace ouc_loop(const vessel::PlantModel& plant, const synth::OucController& ctrl) {
  return lti::feedback_interconnect(vessel::plant_state_space(plant), synth::controller_state_space(ctrl));
}

lti::StateSpace notch_loop(const vessel::PlantModel& plant, const baselines::NotchController& ctrl) {
  return lti::feedback_interconnect(vessel::plant_state_space(plant), baselines::notch_state_space(ctrl));
}

lti::StateSpace open_loop(const vessel::PlantModel& plant) {
  const auto p = vessel::plant_state_space(plant);
  lti::StateSpace ol;
  ol.A = p.A;
  ol.B = p.E;
  ol.C = Eigen::MatrixXd::Zero(4, p.states());
  ol.C.topRows(2) = p.C;
  ol.D = Eigen::MatrixXd::Zero(4, p.disturbances());
  ol.D.topRows(2) = p.G;
  ol.validate();
  return ol;
}

CostReport simulated_cost(const lti::StateSpace& cl, const waves::DisturbanceSpec& spec, const CostWeights& w,
                          const SimParams& sim) {
  w.validate();
  if (!(sim.h > 0.0)) throw std::invalid_argument("simulated_cost: h must be positive");
  if (!(sim.T0 >= 0.0 && sim.T > sim.T0)) throw std::invalid_argument("simulated_cost: need T > T0 >= 0");
  check_loop_shape(cl, spec);
  require_stable(cl, "simulated_cost");
  const auto tr = lti::simulate(cl, spec, sim.T, sim.h);
  const auto k0 = static_cast<Eigen::Index>(std::llround(sim.T0 / sim.h));
  const Eigen::Index k1 = tr.t.size() - 1;
  if (k1 <= k0) throw std::invalid_argument("simulated_cost: averaging window is empty");
  Eigen::Vector4d acc = Eigen::Vector4d::Zero();
  for (Eigen::Index k = k0; k <= k1; ++k) {
    const double weight = (k == k0 || k == k1) ? 0.5 : 1.0;
    acc += weight * tr.y.row(k).transpose().array().square().matrix();
  }
  const double span = static_cast<double>(k1 - k0) * sim.h;
  acc *= sim.h / span;
  CostReport r;
  r.method = "simulated";
  r.T = sim.T;
  r.T0 = sim.T0;
  r.h = sim.h;
  r.J_roll = w.alpha * acc(0);
  r.J_yaw = w.beta * acc(1);
  r.J_u1 = w.gamma1 * acc(2);
  r.J_u2 = w.gamma2 * acc(3);
  finish(r);
  return r;
}

CostReport analytic_cost(const lti::StateSpace& cl, const waves::DisturbanceSpec& spec, const CostWeights& w) {
  w.validate();
  spec.validate();
  check_loop_shape(cl, spec);
  require_stable(cl, "analytic_cost");
  Eigen::Vector4d acc = Eigen::Vector4d::Zero();
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double omega = spec.frequencies[j];
    const Eigen::VectorXcd v = cl.response(Complex(0.0, omega)) * spec.amplitudes[j];
    const double factor = omega == 0.0 ? 1.0 : 0.5;
    acc += factor * v.cwiseAbs2();
  }
  CostReport r;
  r.method = "analytic";
  r.J_roll = w.alpha * acc(0);
  r.J_yaw = w.beta * acc(1);
  r.J_u1 = w.gamma1 * acc(2);
  r.J_u2 = w.gamma2 * acc(3);
  finish(r);
  return r;
}

CostReport analytic_cost(const vessel::PlantModel& plant, const synth::OucController& ctrl,
                         const waves::DisturbanceSpec& spec, const CostWeights& w) {
  return analytic_cost(ouc_loop(plant, ctrl), spec, w);
}

double per_frequency_cost(const vessel::PlantModel& plant, const CostWeights& w, double omega,
                          const Eigen::MatrixXcd& R, const Eigen::VectorXcd& d) {
  const Complex s(0.0, omega);
  const Eigen::VectorXcd u = R * d;
  const Eigen::VectorXcd e = plant.W_yu0(s) * u + plant.W_yd0(s) * d;
  const double factor = omega == 0.0 ? 1.0 : 0.5;
  return factor * (w.alpha * std::norm(e(0)) + w.beta * std::norm(e(1)) + w.gamma1 * std::norm(u(0)) +
                   w.gamma2 * std::norm(u(1)));
}

bool optimality_probe(const vessel::PlantModel& plant, const CostWeights& w, double omega,
                      const Eigen::MatrixXcd& R, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("optimality_probe: trials must be >= 1");
  PortableNormal rng(seed);
  const bool dc = omega == 0.0;
  auto draw = [&](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const double re = rng();
        m(i, j) = dc ? Complex(re, 0.0) : Complex(re, rng());
      }
    }
    return m;
  };
  const double scale = std::max(R.norm(), 1e-3);
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXcd d = draw(R.cols(), 1);
    Eigen::MatrixXcd delta = draw(R.rows(), R.cols());
    // Perturbation sizes spread over three decades below the scale of R.
    const double size = scale * std::pow(10.0, -3.0 * rng.uniform());
    delta *= size / delta.norm();
    const double base = per_frequency_cost(plant, w, omega, R, d);
    const double pert = per_frequency_cost(plant, w, omega, R + delta, d);
    if (!(pert > base + 1e-12)) return false;
  }
  return true;
}

bool per_frequency_optimality_probe(const vessel::PlantModel& plant, const CostWeights& w,
                                    const synth::InterpolationTarget& target, int trials, std::uint64_t seed) {
  return optimality_probe(plant, w, target.omega, target.R, trials, seed);
}

Comparison compare(const std::vector<NamedLoop>& loops, const waves::DisturbanceSpec& spec, const CostWeights& w,
                   const SimParams& sim, bool run_simulation) {
  Comparison out;
  for (const auto& l : loops) {
    ComparisonRow row;
    row.controller = l.name;
    const auto st = lti::is_stable(l.closed_loop);
    row.stable = st.stable;
    row.margin = st.margin;
    if (row.stable) {
      try {
        row.analytic = analytic_cost(l.closed_loop, spec, w);
        if (run_simulation) row.simulated = simulated_cost(l.closed_loop, spec, w, sim);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    } else {
      row.error = "closed loop is unstable";
    }
    out.rows.push_back(std::move(row));
  }
  auto key = [](const ComparisonRow& r) {
    return r.analytic ? r.analytic->J_total : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [&](const ComparisonRow& a, const ComparisonRow& b) { return key(a) < key(b); });
  return out;
}

std::string comparison_csv(const Comparison& c) {
  std::ostringstream os;
  os.precision(17);
  os << "controller,J_total,J_roll,J_yaw,J_u1,J_u2,method,stable\n";
  auto line = [&](const std::string& name, const CostReport* r, const std::string& method, bool stable) {
    os << name << ',';
    if (r) {
      os << r->J_total << ',' << r->J_roll << ',' << r->J_yaw << ',' << r->J_u1 << ',' << r->J_u2;
    } else {
      os << "inf,inf,inf,inf,inf";
    }
    os << ',' << method << ',' << (stable ? "true" : "false") << '\n';
  };
  for (const auto& row : c.rows) {
    line(row.controller, row.analytic ? &*row.analytic : nullptr, "analytic", row.stable);
    if (row.simulated || !row.stable) {
      line(row.controller, row.simulated ? &*row.simulated : nullptr, "simulated", row.stable);
    }
  }
  return os.str();
}

PortableNormal::PortableNormal(std::uint64_t seed) : gen_(seed) {}

double PortableNormal::uniform() { return waves::portable_uniform(gen_()); }

double PortableNormal::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ouc::evaluate
