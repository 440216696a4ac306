#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ouc/baselines/baselines.hpp"
#include "ouc/evaluate/evaluate.hpp"

using namespace ouc;
using namespace ouc::baselines;
using fixtures::benchmark_plant;
using poly::Complex;

TEST(Lqr, BenchmarkDesign) {
  const auto d = design_lqr(benchmark_plant());
  EXPECT_LE(d.residual, 1e-8);
  EXPECT_GT(d.margin, 0.0);
  EXPECT_TRUE(lti::is_stable(lqr_closed_loop(d)).stable);
  EXPECT_LT((d.P - d.P.transpose()).norm(), 1e-10 * d.P.norm());
  // Q = C^T diag(q) C on the realization the gain acts on.
  const Eigen::MatrixXd q = d.plant.C.transpose() * Eigen::Vector2d(100.0, 1.0).asDiagonal() * d.plant.C;
  EXPECT_LT((d.Q - q).norm(), 1e-12 * q.norm());
  EXPECT_LT((d.K - d.R.inverse() * d.plant.B.transpose() * d.P).norm(), 1e-9 * d.K.norm());
}

TEST(Lqr, ZeroOutputWeightsGiveZeroGain) {
  const auto d = design_lqr(benchmark_plant(), {0.0, 0.0, 0.1, 0.01});
  EXPECT_LT(d.K.norm(), 1e-9);
}

TEST(Lqr, InvalidWeights) {
  EXPECT_THROW(design_lqr(benchmark_plant(), {100.0, 1.0, 0.0, 0.01}), std::invalid_argument);
  EXPECT_THROW(design_lqr(benchmark_plant(), {-1.0, 1.0, 0.1, 0.01}), std::invalid_argument);
}

TEST(Notch, PublishedCoefficients) {
  const auto c = notch_controller();
  auto w = [&](double omega) { return c.tf(Complex(0.0, omega))(0, 0); };
  EXPECT_NEAR(w(0.0).real(), -10.0, 1e-12);
  // i 0.2 w0^2 / (i w0 + w0)^2 has magnitude 0.1, times |gain| = 10.
  const Complex s(0.0, 1.15);
  const Complex direct = -10.0 * (s * s + 0.2 * 1.15 * s + 1.15 * 1.15) / ((s + 1.15) * (s + 1.15));
  EXPECT_LT(std::abs(w(1.15) - direct), 1e-12);
  EXPECT_NEAR(std::abs(w(1.15)), 1.0, 1e-12);
  EXPECT_LT(std::abs(w(1.15)), std::abs(w(0.575)));
  EXPECT_LT(std::abs(w(1.15)), std::abs(w(2.3)));
  const auto roots = c.tf.denominator().roots();
  for (const auto& r : roots) EXPECT_NEAR(std::abs(r - Complex(-1.15, 0.0)), 0.0, 1e-6);
}

TEST(Notch, RoutingAndRealization) {
  EXPECT_EQ(notch_routing_from_string("rudder"), NotchRouting::Rudder);
  EXPECT_EQ(notch_routing_from_string("u2"), NotchRouting::Fin);
  EXPECT_THROW(notch_routing_from_string("aileron"), std::invalid_argument);
  EXPECT_EQ(to_string(NotchRouting::Fin), "fin");
  EXPECT_THROW(notch_controller(NotchRouting::Rudder, -10.0, 0.0, 0.1), std::invalid_argument);
  for (auto routing : {NotchRouting::Rudder, NotchRouting::Fin}) {
    const auto c = notch_controller(routing);
    const auto ss = notch_state_space(c);
    const Complex s(0.0, 0.8);
    const Eigen::MatrixXcd h = ss.response(s);
    const int k = routing == NotchRouting::Rudder ? 0 : 1;
    EXPECT_LT(std::abs(h(k, 0) - c.tf(s)(0, 0)), 1e-12);
    EXPECT_EQ(std::abs(h(1 - k, 0)), 0.0);
    EXPECT_EQ(h.col(1).norm(), 0.0);
  }
}

TEST(Baselines, ClosedLoopsStable) {
  EXPECT_TRUE(lti::is_stable(evaluate::notch_loop(benchmark_plant(), notch_controller(NotchRouting::Rudder))).stable);
  EXPECT_TRUE(lti::is_stable(evaluate::notch_loop(benchmark_plant(), notch_controller(NotchRouting::Fin))).stable);
  EXPECT_TRUE(lti::is_stable(lqr_closed_loop(design_lqr(benchmark_plant()))).stable);
}
