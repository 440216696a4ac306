#include "ouc/vessel/vessel.hpp"

#include <cmath>
#include <sstream>

#include "ouc/errors.hpp"
#include "ouc/lti/realize.hpp"

namespace ouc::vessel {

using poly::MatrixPolynomial;
using poly::RationalMatrix;

namespace {

const Polynomial kS{0.0, 1.0};

Polynomial product(std::initializer_list<Polynomial> factors, double gain = 1.0) {
  Polynomial p = Polynomial::constant(gain);
  for (const auto& f : factors) p *= f;
  return p;
}

std::string describe(std::complex<double> z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

VesselTF benchmark_vessel() {
  VesselTF v;
  v.a = product({kS, {0.4375, 1.0}, {0.04404, 1.0}, {1.31, 0.2164, 1.0}});
  v.b_phi_r = product({{-0.4919, 1.0}, {0.3005, 1.0}}, -0.159);
  v.b_psi_r = product({{0.1785, 1.0}, {1.324, 0.2586, 1.0}}, -0.078);
  v.b_phi_f = product({{0.4501, 1.0}, {0.03056, 1.0}}, 0.402);
  v.b_psi_f = product({{-0.9642, 1.0}, {0.2361, 0.1974, 1.0}}, -0.006);
  return v;
}

Autopilot benchmark_autopilot() { return {Polynomial{57.0 * 0.5263, 57.0}, Polynomial{10.0, 1.0}}; }

PlantModel assemble_plant(const VesselTF& v, const Autopilot& ap, double cancellation_tol) {
  if (v.a.is_zero() || ap.a_ap.is_zero()) throw AssemblyError("assemble_plant: zero denominator");
  if (std::abs(v.a.coeff(0)) > Polynomial::kTrimTolerance * v.a.max_abs_coeff()) {
    throw AssemblyError("assemble_plant: a(0) must vanish (yaw integrator)");
  }
  // Roll channels carry an extra s, so their numerators need two degrees of room.
  const int da = v.a.degree();
  if (v.b_phi_r.degree() + 1 >= da || v.b_phi_f.degree() + 1 >= da || v.b_psi_r.degree() >= da ||
      v.b_psi_f.degree() >= da) {
    throw AssemblyError("assemble_plant: vessel channels must be strictly proper");
  }
  if (ap.b_ap.degree() > ap.a_ap.degree()) throw AssemblyError("assemble_plant: autopilot is improper");

  PlantModel pm;
  pm.vessel = v;
  pm.autopilot = ap;
  pm.Delta = v.a * ap.a_ap - v.b_psi_r * ap.b_ap;
  const auto hz = poly::is_hurwitz(pm.Delta);
  if (!hz.hurwitz) {
    std::complex<double> worst = 0.0;
    double worst_re = -1e300;
    for (const auto& z : pm.Delta.roots()) {
      if (z.real() > worst_re) {
        worst_re = z.real();
        worst = z;
      }
    }
    throw AssemblyError("assemble_plant: autopilot does not stabilize the yaw loop; Delta has root " +
                        describe(worst));
  }

  const Polynomial& a = v.a;
  const Polynomial& aap = ap.a_ap;
  const Polynomial& bap = ap.b_ap;
  const Polynomial a_bar = poly::divide(a, kS).quotient;
  const Polynomial cross = v.b_phi_r * v.b_psi_f - v.b_phi_f * v.b_psi_r;
  const auto div = poly::divide(cross, a_bar);
  pm.cancellation_remainder = div.relative_remainder;
  pm.exact_cancellation = div.relative_remainder <= cancellation_tol;

  if (pm.exact_cancellation) {
    const Polynomial b0 = kS * aap * v.b_phi_f + bap * div.quotient;
    pm.W_yu0 = RationalMatrix(
        MatrixPolynomial(2, 2, {kS * aap * v.b_phi_r, b0, aap * v.b_psi_r, aap * v.b_psi_f}), pm.Delta);
  } else {
    const Polynomial b0 = kS * aap * v.b_phi_f * a_bar + bap * cross;
    pm.W_yu0 = RationalMatrix(MatrixPolynomial(2, 2,
                                               {kS * aap * v.b_phi_r * a_bar, b0, aap * v.b_psi_r * a_bar,
                                                aap * v.b_psi_f * a_bar}),
                              pm.Delta * a_bar);
  }

  const Polynomial roll = kS * v.b_phi_r * bap;
  const Polynomial yaw = a * aap;
  pm.W_yd0 = RationalMatrix(MatrixPolynomial(2, 3, {-roll, pm.Delta, roll, -yaw, Polynomial{}, yaw}), pm.Delta);
  return pm;
}

std::vector<bool> condition16_check(const RationalMatrix& w_yd, const std::vector<double>& freqs) {
  std::vector<bool> out;
  out.reserve(freqs.size());
  for (double w : freqs) {
    const Eigen::MatrixXcd m = w_yd(std::complex<double>(0.0, w));
    out.push_back(std::abs((m * m.adjoint()).determinant()) > 1e-12);
  }
  return out;
}

std::vector<bool> condition16_check(const PlantModel& plant, const std::vector<double>& freqs) {
  return condition16_check(plant.W_yd0, freqs);
}

lti::StateSpace plant_state_space(const PlantModel& plant, double tol) {
  // With the rational fallback W_yu0 sits over Delta * a/s; bring W_yd0 there too.
  const Polynomial& den = plant.W_yu0.denominator();
  const auto lift = poly::divide(den, plant.W_yd0.denominator());
  const MatrixPolynomial nd = lift.quotient * plant.W_yd0.numerators();
  MatrixPolynomial joint(2, 5);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) joint(i, j) = plant.W_yu0.numerators()(i, j);
    for (int j = 0; j < 3; ++j) joint(i, 2 + j) = nd(i, j);
  }
  const auto ss = lti::realize(RationalMatrix(joint, den), tol);
  lti::StateSpace out;
  out.A = ss.A;
  out.B = ss.B.leftCols(2);
  out.E = ss.B.rightCols(3);
  out.C = ss.C;
  out.D = ss.D.leftCols(2);
  out.G = ss.D.rightCols(3);
  out.validate();
  return out;
}

}  // namespace ouc::vessel
