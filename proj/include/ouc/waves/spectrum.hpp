#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ouc/waves/disturbance.hpp"

namespace ouc::waves {

/// Sampled one-sided spectral density S(w) on an increasing grid.
struct SpectrumTable {
  std::vector<double> omega;
  std::vector<double> S;

  std::size_t size() const { return omega.size(); }
  /// Nonempty, equal lengths, omega >= 0 strictly increasing, S finite >= 0.
  /// Throws std::invalid_argument.
  void validate() const;
  /// Width of the frequency bin owned by each grid point: w_i - w_{i-1},
  /// with the first bin as wide as the second (or w_0 for a one-point table).
  std::vector<double> bin_widths() const;
  /// sum_i S_i * width_i
  double variance() const;
};

struct FrequencyGrid {
  double omega_max = 5.0;
  int points = 2000;  ///< grid is w_i = (i+1) * omega_max / points
};

/// S(w) = |K_w i w / (-w^2 + 2 zeta0 w0 i w + w0^2)|^2.
/// Requires K_w > 0, w0 > 0, zeta0 in (0, 1).
SpectrumTable shaping_filter_spectrum(double k_w, double omega0, double zeta0, const FrequencyGrid& grid = {});

/// CSV with header `omega_rad_s,S`.
SpectrumTable read_spectrum_csv(const std::filesystem::path& path);
SpectrumTable parse_spectrum_csv(const std::string& text);
void write_spectrum_csv(const SpectrumTable& table, const std::filesystem::path& path);

struct ChannelSpectrum {
  int channel = kDPhi;
  SpectrumTable table;
};

/// Random-phase realization. The table grid (zero frequency excluded) is
/// subsampled to p points at indices floor((k+1) n / p) - 1; point k gets the
/// summed bin width dw_k of the grid points it stands for and the amplitude
/// sqrt(2 S dw_k). Phases are uniform on [0, 2pi) from a seeded mt19937_64,
/// drawn channel by channel. All tables must share one grid.
/// Throws std::invalid_argument for p < 1 or p larger than the usable grid.
DisturbanceSpec sample_irregular_sea(std::span<const ChannelSpectrum> spectra, int p, std::uint64_t seed,
                                     int channels = kShipChannels);
DisturbanceSpec sample_irregular_sea(const SpectrumTable& table, int p, std::uint64_t seed,
                                     int channel = kDPhi, int channels = kShipChannels);

/// Uniform draw on [0, 1) from the top 53 bits; identical on every platform.
double portable_uniform(std::uint64_t bits);

/// Mean of d_channel(t)^2 over n uniform samples of [0, T).
double sample_variance(const DisturbanceSpec& spec, int channel, double T, int n);

/// Sum of |d_j|^2 / 2 over harmonics (|d_j|^2 at w = 0) on one channel.
double amplitude_variance(const DisturbanceSpec& spec, int channel);

struct DominantFrequencies {
  std::vector<double> omega;
  /// Fewer interior maxima than requested.
  bool warning = false;
};

/// The `count` largest interior local maxima, descending by S, ties to lower w.
DominantFrequencies dominant_frequencies(const SpectrumTable& table, int count);

}  // namespace ouc::waves
