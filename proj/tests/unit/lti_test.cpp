#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "ouc/errors.hpp"
#include "ouc/lti/interconnect.hpp"
#include "ouc/lti/realize.hpp"
#include "ouc/lti/riccati.hpp"
#include "ouc/lti/simulate.hpp"
#include "ouc/waves/disturbance.hpp"

using namespace ouc;
using namespace ouc::lti;
using poly::Complex;
using poly::MatrixPolynomial;
using poly::Polynomial;
using poly::RationalMatrix;

namespace {

StateSpace first_order(double pole) {
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Constant(1, 1, -pole);
  ss.B = Eigen::MatrixXd::Ones(1, 1);
  ss.C = Eigen::MatrixXd::Ones(1, 1);
  ss.D = Eigen::MatrixXd::Zero(1, 1);
  ss.validate();
  return ss;
}

void expect_same_response(const RationalMatrix& w, const StateSpace& ss, double tol) {
  for (Complex s : {Complex(0.0, 0.3), Complex(0.1, 1.7), Complex(-0.4, 5.0), Complex(2.0, 0.0)}) {
    EXPECT_LT((w(s) - ss.response(s)).norm(), tol * (1.0 + w(s).norm())) << "at s = " << s;
  }
}

}  // namespace

TEST(StateSpace, ValidateRejectsBadShapes) {
  StateSpace ss = first_order(1.0);
  ss.C = Eigen::MatrixXd::Ones(1, 2);
  EXPECT_THROW(ss.validate(), std::invalid_argument);
}

TEST(StateSpace, ResponseAtPoleThrows) {
  EXPECT_THROW(first_order(0.0).response(Complex(0.0, 0.0)), PoleError);
  EXPECT_NEAR(std::abs(first_order(2.0).response(Complex(0.0, 1.0))(0, 0) - 1.0 / Complex(2.0, 1.0)), 0.0,
              1e-15);
}

TEST(StateSpace, StabilityReport) {
  EXPECT_TRUE(is_stable(first_order(0.5)).stable);
  EXPECT_NEAR(is_stable(first_order(0.5)).margin, 0.5, 1e-14);
  EXPECT_FALSE(is_stable(first_order(0.0)).stable);
  Eigen::MatrixXd osc(2, 2);
  osc << 0.0, 1.0, -1.0, 0.0;
  EXPECT_FALSE(is_stable(osc).stable);
  EXPECT_TRUE(std::isinf(is_stable(Eigen::MatrixXd(0, 0)).margin));
}

TEST(Realize, SisoRealizationMatchesTransferFunction) {
  const RationalMatrix w(MatrixPolynomial(1, 1, {Polynomial{3.0, 1.0}}), Polynomial{2.0, 3.0, 1.0});
  const auto ss = realize(w);
  EXPECT_EQ(ss.states(), 2);
  expect_same_response(w, ss, 1e-12);
}

TEST(Realize, PoleZeroCancellationIsRemoved) {
  // (s + 1) / ((s + 1)(s + 2)) has McMillan degree one.
  const RationalMatrix w(MatrixPolynomial(1, 1, {Polynomial{1.0, 1.0}}), Polynomial{2.0, 3.0, 1.0});
  EXPECT_EQ(realize_canonical(w).states(), 2);
  const auto ss = realize(w);
  EXPECT_EQ(ss.states(), 1);
  expect_same_response(w, ss, 1e-12);
}

TEST(Realize, MimoWithFeedthrough) {
  const Polynomial den{2.0, 3.0, 1.0};
  MatrixPolynomial num(2, 3, {Polynomial{1.0}, Polynomial{0.0, 1.0}, Polynomial{2.0, 3.0, 1.0},
                              Polynomial{0.5, 0.0, 2.0}, Polynomial{}, Polynomial{-1.0, 1.0}});
  const RationalMatrix w(num, den);
  const auto ss = realize(w);
  expect_same_response(w, ss, 1e-11);
  // One pole pair per independent direction: at most 2 * min(rows, cols) states.
  EXPECT_LE(ss.states(), 4);
}

TEST(Realize, ImproperThrows) {
  const RationalMatrix w(MatrixPolynomial(1, 1, {Polynomial{0.0, 0.0, 1.0}}), Polynomial{1.0, 1.0});
  EXPECT_THROW(realize(w), ImproperError);
}

TEST(Realize, LeftMatrixFraction) {
  // N = [[s^2 + 3s + 2, 1], [0, s^2 + s + 1]], M = [[1, s], [0, 3]]: N^-1 M evaluated pointwise.
  MatrixPolynomial n(2, 2, {Polynomial{2.0, 3.0, 1.0}, Polynomial{1.0}, Polynomial{}, Polynomial{1.0, 1.0, 1.0}});
  MatrixPolynomial m(2, 2, {Polynomial{1.0}, Polynomial{0.0, 1.0}, Polynomial{}, Polynomial{3.0}});
  const auto ss = realize_left_mfd(n, m);
  for (Complex s : {Complex(0.0, 0.7), Complex(1.0, 2.0)}) {
    const Eigen::MatrixXcd ref = n(s).fullPivLu().solve(m(s));
    EXPECT_LT((ss.response(s) - ref).norm(), 1e-12);
  }
  MatrixPolynomial improper(2, 2, {Polynomial{0.0, 0.0, 0.0, 1.0}, Polynomial{}, Polynomial{}, Polynomial{1.0}});
  EXPECT_THROW(realize_left_mfd(n, improper), ImproperError);
  MatrixPolynomial singular_lead(2, 2, {Polynomial{2.0, 1.0}, Polynomial{}, Polynomial{}, Polynomial{1.0, 1.0, 1.0}});
  EXPECT_THROW(realize_left_mfd(singular_lead, m), std::invalid_argument);
}

TEST(Riccati, ScalarClosedForm) {
  // a = b = q = r = 1: P^2 - 2P - 1 = 0, P = 1 + sqrt(2).
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  const auto sol = solve_care(one, one, one, one);
  EXPECT_NEAR(sol.P(0, 0), 1.0 + std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(sol.margin, std::numbers::sqrt2, 1e-12);
}

TEST(Riccati, DoubleIntegrator) {
  Eigen::MatrixXd a(2, 2), b(2, 1);
  a << 0, 1, 0, 0;
  b << 0, 1;
  const auto sol = solve_care(a, b, Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(1, 1));
  Eigen::MatrixXd ref(2, 2);
  ref << std::sqrt(3.0), 1.0, 1.0, std::sqrt(3.0);
  EXPECT_LT((sol.P - ref).norm(), 1e-11);
  EXPECT_LT(sol.residual, 1e-10);
  EXPECT_TRUE(is_stable(Eigen::MatrixXd(a - b * sol.K)).stable);
}

TEST(Riccati, UnstabilizableThrows) {
  // Unstable mode that the input cannot reach.
  Eigen::MatrixXd a(2, 2), b(2, 1);
  a << 1, 0, 0, -1;
  b << 0, 1;
  EXPECT_THROW(solve_care(a, b, Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(1, 1)), RiccatiError);
}

TEST(Riccati, LyapunovAgainstKroneckerSolve) {
  Eigen::MatrixXd a(3, 3);
  a << -1.0, 2.0, 0.0, -0.5, -0.3, 1.0, 0.2, 0.0, -2.0;
  Eigen::MatrixXd q(3, 3);
  q << 2.0, 0.3, 0.1, 0.3, 1.0, 0.0, 0.1, 0.0, 0.5;
  const Eigen::MatrixXd x = solve_lyapunov(a, q);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd big = Eigen::kroneckerProduct(id, a.transpose()) + Eigen::kroneckerProduct(a.transpose(), id);
  const Eigen::VectorXd vq = Eigen::Map<const Eigen::VectorXd>(q.data(), 9);
  const Eigen::VectorXd ref = big.fullPivLu().solve(-vq);
  EXPECT_LT((Eigen::Map<const Eigen::VectorXd>(x.data(), 9) - ref).norm(), 1e-12);
}

TEST(Interconnect, SisoLoopPoles) {
  // Plant 1/(s+1) with static gain u = -k y: closed-loop pole at -(1 + k).
  StateSpace plant = first_order(1.0);
  plant.E = Eigen::MatrixXd::Ones(1, 1);
  plant.G = Eigen::MatrixXd::Zero(1, 1);
  plant.validate();
  StateSpace ctrl;
  ctrl.A = Eigen::MatrixXd(0, 0);
  ctrl.B = Eigen::MatrixXd(0, 1);
  ctrl.C = Eigen::MatrixXd(1, 0);
  ctrl.D = Eigen::MatrixXd::Constant(1, 1, -3.0);
  ctrl.validate();
  const auto cl = feedback_interconnect(plant, ctrl);
  EXPECT_EQ(cl.states(), 1);
  EXPECT_NEAR(cl.A(0, 0), -4.0, 1e-15);
  EXPECT_EQ(cl.outputs(), 2);
  // d -> u = -3 / (s + 4)
  EXPECT_LT(std::abs(cl.response(Complex(0.0, 1.0))(1, 0) - (-3.0 / Complex(4.0, 1.0))), 1e-14);
}

TEST(Interconnect, AlgebraicLoopDetected) {
  StateSpace plant = first_order(1.0);
  plant.D = Eigen::MatrixXd::Ones(1, 1);
  plant.validate();
  StateSpace ctrl;
  ctrl.A = Eigen::MatrixXd(0, 0);
  ctrl.B = Eigen::MatrixXd(0, 1);
  ctrl.C = Eigen::MatrixXd(1, 0);
  ctrl.D = Eigen::MatrixXd::Ones(1, 1);
  ctrl.validate();
  EXPECT_THROW(feedback_interconnect(plant, ctrl), AlgebraicLoopError);
}

TEST(Interconnect, LoopDeterminantMatchesCharacteristicPolynomial) {
  // Plant 1/(s+1), controller (s+2) u = -5 y: det = (s+1)(s+2) + 5.
  const StateSpace plant = first_order(1.0);
  const MatrixPolynomial n(1, 1, {Polynomial{2.0, 1.0}});
  const MatrixPolynomial m(1, 1, {Polynomial{-5.0}});
  const Polynomial ref{7.0, 3.0, 1.0};
  for (Complex s : {Complex(0.0, 1.0), Complex(-2.0, 0.5)}) {
    EXPECT_LT(std::abs(loop_determinant(plant, n, m, s) - ref(s)), 1e-12);
  }
  const auto roots = ref.roots();
  const std::vector<Complex> eig(roots.begin(), roots.end());
  const auto cmp = compare_loop_determinant(plant, n, m, eig, 0.1);
  EXPECT_EQ(cmp.degree, 2);
  EXPECT_TRUE(cmp.counts_match);
  EXPECT_NEAR(cmp.total_count, 2.0, 1e-8);
  EXPECT_LT(cmp.max_centroid_error, 1e-10);
}

TEST(Simulate, StepResponseOfFirstOrderLag) {
  // x' = -x + d, d = 1: x(t) = 1 - exp(-t).
  waves::DisturbanceSpec spec;
  spec.frequencies = {0.0};
  spec.amplitudes = {Eigen::VectorXcd::Ones(1)};
  const auto tr = simulate(first_order(1.0), spec, 5.0, 0.25);
  ASSERT_EQ(tr.t.size(), 21);
  for (Eigen::Index k = 0; k < tr.t.size(); ++k) EXPECT_NEAR(tr.y(k, 0), 1.0 - std::exp(-tr.t(k)), 1e-13);
}

TEST(Simulate, SinusoidalForcingExactSolution) {
  // x' = -x + sin t, x(0) = 0: x = (sin t - cos t + exp(-t)) / 2.
  const auto spec = waves::single_tone(1.0, 0, waves::encode_sine(1.0, 0.0), 1);
  const auto tr = simulate(first_order(1.0), spec, 20.0, 0.1);
  for (Eigen::Index k = 0; k < tr.t.size(); ++k) {
    const double t = tr.t(k);
    EXPECT_NEAR(tr.y(k, 0), 0.5 * (std::sin(t) - std::cos(t) + std::exp(-t)), 1e-12);
    EXPECT_NEAR(tr.d(k, 0), std::sin(t), 1e-12);
  }
}

TEST(Simulate, OscillatorConservesEnergy) {
  StateSpace osc;
  osc.A = Eigen::MatrixXd(2, 2);
  osc.A << 0.0, 1.0, -4.0, 0.0;
  osc.B = Eigen::MatrixXd::Zero(2, 1);
  osc.C = Eigen::MatrixXd::Identity(2, 2);
  osc.D = Eigen::MatrixXd::Zero(2, 1);
  osc.validate();
  SimOptions opt;
  opt.x0 = Eigen::Vector2d(1.0, 0.0);
  const auto tr = simulate(osc, waves::single_tone(1.0, 0, 0.0, 1), 50.0, 0.05, opt);
  for (Eigen::Index k = 0; k < tr.t.size(); ++k) EXPECT_NEAR(tr.y(k, 0), std::cos(2.0 * tr.t(k)), 1e-10);
}

TEST(Simulate, SteadyStateAmplitudeMatchesFrequencyResponse) {
  const RationalMatrix w(MatrixPolynomial(1, 1, {Polynomial{1.0, 0.5}}), Polynomial{2.0, 0.4, 1.0});
  const auto ss = realize(w);
  const double omega = 1.3;
  const auto spec = waves::single_tone(omega, 0, waves::encode_sine(1.0, 0.0), 1);
  const auto tr = simulate(ss, spec, 200.0, 0.01);
  double peak = 0.0;
  for (Eigen::Index k = tr.t.size() - 1000; k < tr.t.size(); ++k) peak = std::max(peak, std::abs(tr.y(k, 0)));
  EXPECT_NEAR(peak, std::abs(w(Complex(0.0, omega))(0, 0)), 1e-4);
}

TEST(Simulate, DivergenceAndArguments) {
  waves::DisturbanceSpec spec;
  spec.frequencies = {0.0};
  spec.amplitudes = {Eigen::VectorXcd::Ones(1)};
  EXPECT_THROW(simulate(first_order(-50.0), spec, 100.0, 0.1), DivergenceError);
  EXPECT_THROW(simulate(first_order(1.0), spec, 1.0, 0.0), std::invalid_argument);
}
