#pragma once

#include <filesystem>
#include <vector>

#include "ouc/lti/state_space.hpp"
#include "ouc/poly/rational_matrix.hpp"

namespace ouc::vessel {

using poly::Polynomial;

/// Linearized ship channels, all over the common denominator a(s):
///   W_phi_r = s b_phi_r / a,  W_psi_r = b_psi_r / a,
///   W_phi_f = s b_phi_f / a,  W_psi_f = b_psi_f / a.
/// a(0) = 0 is the yaw integrator.
struct VesselTF {
  Polynomial a;
  Polynomial b_phi_r, b_psi_r, b_phi_f, b_psi_f;
};

/// Heading autopilot W_ap = b_ap / a_ap acting on the rudder.
struct Autopilot {
  Polynomial b_ap, a_ap;
};

/// Ship plus autopilot with the yaw loop eliminated.
///   e = W_yu0 u + W_yd0 d,  e = (e_phi, e_psi),  u = (rudder, fin),
///   d = (psi_bar, d_phi, d_psi).
struct PlantModel {
  poly::RationalMatrix W_yu0;  ///< 2x2
  poly::RationalMatrix W_yd0;  ///< 2x3
  Polynomial Delta;            ///< a a_ap - b_psi_r b_ap
  /// Relative remainder of (b_phi_r b_psi_f - b_phi_f b_psi_r) / (a/s).
  double cancellation_remainder = 0.0;
  /// False when the remainder exceeded the tolerance and W_yu0 was kept over
  /// the denominator Delta * a/s.
  bool exact_cancellation = true;
  VesselTF vessel;
  Autopilot autopilot;
};

VesselTF benchmark_vessel();
Autopilot benchmark_autopilot();

inline constexpr double kDefaultCancellationTolerance = 1e-4;

/// Throws AssemblyError when Delta is not Hurwitz (naming the offending root),
/// when a(0) != 0, or when a channel is not strictly proper.
PlantModel assemble_plant(const VesselTF& v, const Autopilot& ap,
                          double cancellation_tol = kDefaultCancellationTolerance);

/// det(W_yd0(iw) W_yd0(iw)^*) has magnitude above 1e-12, per frequency.
std::vector<bool> condition16_check(const poly::RationalMatrix& w_yd, const std::vector<double>& freqs);
std::vector<bool> condition16_check(const PlantModel& plant, const std::vector<double>& freqs);

/// Joint realization of [W_yu0 W_yd0]: B/D for u, E/G for d.
lti::StateSpace plant_state_space(const PlantModel& plant, double tol = 1e-9);

struct ModelFile {
  VesselTF vessel;
  Autopilot autopilot;
};

/// Reads the factored JSON model. A missing "autopilot" block selects the
/// benchmark autopilot. Throws ConfigError.
ModelFile load_model(const std::filesystem::path& path);
ModelFile parse_model(const std::string& json_text);

}  // namespace ouc::vessel
