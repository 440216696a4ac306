#include "ouc/waves/disturbance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ouc::waves {

void DisturbanceSpec::validate() const {
  if (frequencies.size() != amplitudes.size()) {
    throw std::invalid_argument("disturbance spec: frequency and amplitude counts differ");
  }
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    const double w = frequencies[j];
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("disturbance spec: frequencies must be finite and >= 0");
    if (j > 0 && !(w > frequencies[j - 1])) {
      throw std::invalid_argument("disturbance spec: frequencies must be strictly increasing");
    }
    if (amplitudes[j].size() != amplitudes.front().size()) {
      throw std::invalid_argument("disturbance spec: inconsistent channel count");
    }
    for (Eigen::Index c = 0; c < amplitudes[j].size(); ++c) {
      const auto z = amplitudes[j](c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("disturbance spec: non-finite amplitude");
      }
      if (w == 0.0 && z.imag() != 0.0) {
        throw std::invalid_argument("disturbance spec: amplitude at zero frequency must be real");
      }
    }
  }
}

Eigen::VectorXd DisturbanceSpec::evaluate(double t) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(channels());
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    const double c = std::cos(frequencies[j] * t);
    const double s = std::sin(frequencies[j] * t);
    out += amplitudes[j].real() * c - amplitudes[j].imag() * s;
  }
  return out;
}

std::complex<double> encode_sine(double amplitude, double phase) {
  return std::polar(amplitude, phase - std::numbers::pi / 2.0);
}

std::pair<double, double> decode_sine(std::complex<double> d) {
  double phase = std::arg(d) + std::numbers::pi / 2.0;
  if (phase > std::numbers::pi) phase -= 2.0 * std::numbers::pi;
  return {std::abs(d), phase};
}

std::function<Eigen::VectorXd(double)> polyharmonic_signal(const DisturbanceSpec& spec) {
  spec.validate();
  return [spec](double t) { return spec.evaluate(t); };
}

DisturbanceSpec single_tone(double omega, int channel, std::complex<double> amplitude, int channels) {
  if (channel < 0 || channel >= channels) throw std::invalid_argument("single_tone: channel out of range");
  DisturbanceSpec spec;
  spec.frequencies = {omega};
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(channels);
  d(channel) = amplitude;
  spec.amplitudes = {d};
  spec.validate();
  return spec;
}

}  // namespace ouc::waves
