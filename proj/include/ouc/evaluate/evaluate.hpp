#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ouc/baselines/baselines.hpp"
#include "ouc/lti/simulate.hpp"
#include "ouc/synth/ouc.hpp"
#include "ouc/waves/disturbance.hpp"

namespace ouc::evaluate {

using synth::CostWeights;

/// Average of alpha e_phi^2 + beta e_psi^2 + gamma1 u1^2 + gamma2 u2^2.
struct CostReport {
  double J_total = 0.0;
  double J_roll = 0.0;
  double J_yaw = 0.0;
  double J_u1 = 0.0;
  double J_u2 = 0.0;
  std::string method;  ///< "simulated" or "analytic"
  double T = 0.0, T0 = 0.0, h = 0.0;
};

struct SimParams {
  double T = 600.0;
  double T0 = 100.0;
  double h = 0.01;
};

/// Closed loops with input d and output [e_phi, e_psi, u1, u2].
lti::StateSpace ouc_loop(const vessel::PlantModel& plant, const synth::OucController& ctrl);
lti::StateSpace notch_loop(const vessel::PlantModel& plant, const baselines::NotchController& ctrl);
/// The plant with u = 0.
lti::StateSpace open_loop(const vessel::PlantModel& plant);

/// Trapezoid time average over [T0, T] of the exact-discretization trace.
/// Throws InstabilityError for an unstable loop, DivergenceError if the
/// trace blows up, std::invalid_argument unless T > T0 >= 0 and h > 0.
CostReport simulated_cost(const lti::StateSpace& closed_loop, const waves::DisturbanceSpec& spec,
                          const CostWeights& w, const SimParams& sim = {});

/// Steady-state average: sum over harmonics of v^* F v / 2 (v^* F v at w = 0)
/// with v = H(iw_j) d_j. Frequencies must be distinct. Throws InstabilityError.
CostReport analytic_cost(const lti::StateSpace& closed_loop, const waves::DisturbanceSpec& spec,
                         const CostWeights& w);
CostReport analytic_cost(const vessel::PlantModel& plant, const synth::OucController& ctrl,
                         const waves::DisturbanceSpec& spec, const CostWeights& w);

/// Steady-state cost of one harmonic d at w when the control is u = R d:
/// e = W_yu0 u + W_yd0 d.
double per_frequency_cost(const vessel::PlantModel& plant, const CostWeights& w, double omega,
                          const Eigen::MatrixXcd& R, const Eigen::VectorXcd& d);

/// Draws random d and perturbations delta (real at w = 0) and checks that the
/// cost with R + delta exceeds the cost with R by more than 1e-12 every time.
bool optimality_probe(const vessel::PlantModel& plant, const CostWeights& w, double omega,
                      const Eigen::MatrixXcd& R, int trials, std::uint64_t seed);
bool per_frequency_optimality_probe(const vessel::PlantModel& plant, const CostWeights& w,
                                    const synth::InterpolationTarget& target, int trials, std::uint64_t seed);

struct NamedLoop {
  std::string name;
  lti::StateSpace closed_loop;
};

struct ComparisonRow {
  std::string controller;
  bool stable = false;
  double margin = 0.0;
  std::optional<CostReport> analytic;
  std::optional<CostReport> simulated;
  std::string error;
};

struct Comparison {
  std::vector<ComparisonRow> rows;  ///< ranked by analytic J_total, unstable last
};

/// Unstable or failing loops are reported in the table, not thrown.
Comparison compare(const std::vector<NamedLoop>& loops, const waves::DisturbanceSpec& spec, const CostWeights& w,
                   const SimParams& sim, bool run_simulation = true);

/// Columns: controller, J_total, J_roll, J_yaw, J_u1, J_u2, method, stable.
std::string comparison_csv(const Comparison& c);

/// Standard normal draws from mt19937_64 bits (Box-Muller), platform independent.
class PortableNormal {
 public:
  explicit PortableNormal(std::uint64_t seed);
  double operator()();
  double uniform();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ouc::evaluate
