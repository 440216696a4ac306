#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace ouc::waves {

/// Channel order of the ship disturbance vector d.
enum Channel : int { kPsiBar = 0, kDPhi = 1, kDPsi = 2 };
inline constexpr int kShipChannels = 3;

/// d(t) = Re sum_j d_j exp(i w_j t).
///
/// Phase convention: a sin(w t + phi) is stored as a * exp(i (phi - pi/2)).
struct DisturbanceSpec {
  std::vector<double> frequencies;
  std::vector<Eigen::VectorXcd> amplitudes;

  int channels() const { return amplitudes.empty() ? 0 : static_cast<int>(amplitudes.front().size()); }
  std::size_t size() const { return frequencies.size(); }

  /// Frequencies >= 0, strictly increasing; amplitudes finite with matching
  /// channel counts; imaginary part zero at w = 0. Throws std::invalid_argument.
  void validate() const;

  Eigen::VectorXd evaluate(double t) const;
};

std::complex<double> encode_sine(double amplitude, double phase);
/// Inverse of encode_sine: returns {amplitude, phase in (-pi, pi]}.
std::pair<double, double> decode_sine(std::complex<double> d);

std::function<Eigen::VectorXd(double)> polyharmonic_signal(const DisturbanceSpec& spec);

/// One harmonic at w on a single channel (others zero).
DisturbanceSpec single_tone(double omega, int channel, std::complex<double> amplitude,
                            int channels = kShipChannels);

}  // namespace ouc::waves
