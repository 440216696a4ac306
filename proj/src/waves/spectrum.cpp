#include "ouc/waves/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ouc::waves {

void SpectrumTable::validate() const {
  if (omega.empty()) throw std::invalid_argument("spectrum table is empty");
  if (omega.size() != S.size()) throw std::invalid_argument("spectrum table: column lengths differ");
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!std::isfinite(omega[i]) || omega[i] < 0.0) throw std::invalid_argument("spectrum table: bad frequency");
    if (i > 0 && !(omega[i] > omega[i - 1])) {
      throw std::invalid_argument("spectrum table: frequencies must be strictly increasing");
    }
    if (!std::isfinite(S[i]) || S[i] < 0.0) throw std::invalid_argument("spectrum table: density must be >= 0");
  }
}

std::vector<double> SpectrumTable::bin_widths() const {
  std::vector<double> w(omega.size());
  if (omega.size() == 1) {
    w[0] = omega[0];
    return w;
  }
  for (std::size_t i = 1; i < omega.size(); ++i) w[i] = omega[i] - omega[i - 1];
  w[0] = w[1];
  return w;
}

double SpectrumTable::variance() const {
  const auto w = bin_widths();
  double v = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) v += S[i] * w[i];
  return v;
}

SpectrumTable shaping_filter_spectrum(double k_w, double omega0, double zeta0, const FrequencyGrid& grid) {
  if (!(k_w > 0.0) || !std::isfinite(k_w)) throw std::invalid_argument("shaping filter: K_w must be positive");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("shaping filter: omega0 must be positive");
  if (!(zeta0 > 0.0 && zeta0 < 1.0)) throw std::invalid_argument("shaping filter: zeta0 must lie in (0, 1)");
  if (grid.points < 1 || !(grid.omega_max > 0.0)) throw std::invalid_argument("shaping filter: bad grid");
  SpectrumTable t;
  t.omega.resize(static_cast<std::size_t>(grid.points));
  t.S.resize(t.omega.size());
  const double step = grid.omega_max / grid.points;
  for (int i = 0; i < grid.points; ++i) {
    const double w = (i + 1) * step;
    const std::complex<double> s(0.0, w);
    const auto h = k_w * s / (s * s + 2.0 * zeta0 * omega0 * s + omega0 * omega0);
    t.omega[static_cast<std::size_t>(i)] = w;
    t.S[static_cast<std::size_t>(i)] = std::norm(h);
  }
  return t;
}

SpectrumTable parse_spectrum_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
  };
  if (!std::getline(in, line) || strip(line) != "omega_rad_s,S") {
    throw std::invalid_argument("spectrum CSV: header must be `omega_rad_s,S`");
  }
  SpectrumTable t;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty()) continue;
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("spectrum CSV: line " + std::to_string(lineno) + " needs two columns");
    }
    try {
      std::size_t used = 0;
      const double w = std::stod(s.substr(0, comma), &used);
      const std::string rest = s.substr(comma + 1);
      std::size_t used2 = 0;
      const double v = std::stod(rest, &used2);
      if (used != comma || used2 != rest.size()) throw std::invalid_argument("trailing characters");
      t.omega.push_back(w);
      t.S.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("spectrum CSV: cannot parse line " + std::to_string(lineno));
    }
  }
  t.validate();
  return t;
}

SpectrumTable read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("spectrum CSV: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spectrum_csv(ss.str());
}

void write_spectrum_csv(const SpectrumTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  out << "omega_rad_s,S\n";
  for (std::size_t i = 0; i < table.size(); ++i) out << table.omega[i] << ',' << table.S[i] << '\n';
}

double portable_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

DisturbanceSpec sample_irregular_sea(std::span<const ChannelSpectrum> spectra, int p, std::uint64_t seed,
                                     int channels) {
  if (spectra.empty()) throw std::invalid_argument("sample_irregular_sea: no spectra");
  if (p < 1) throw std::invalid_argument("sample_irregular_sea: p must be >= 1");
  const SpectrumTable& ref = spectra.front().table;
  for (const auto& cs : spectra) {
    cs.table.validate();
    if (cs.channel < 0 || cs.channel >= channels) throw std::invalid_argument("sample_irregular_sea: bad channel");
    if (cs.table.omega != ref.omega) throw std::invalid_argument("sample_irregular_sea: spectra must share a grid");
  }
  const auto widths = ref.bin_widths();
  const std::size_t first = ref.omega.front() == 0.0 ? 1 : 0;
  const std::size_t n = ref.size() - first;
  if (static_cast<std::size_t>(p) > n) {
    throw std::invalid_argument("sample_irregular_sea: p = " + std::to_string(p) + " exceeds the " +
                                std::to_string(n) + " usable grid points");
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(p));
  std::vector<double> dw(idx.size());
  std::size_t prev = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = (k + 1) * n / static_cast<std::size_t>(p);  // one past the last owned point
    idx[k] = first + i - 1;
    double acc = 0.0;
    for (std::size_t g = prev; g < i; ++g) acc += widths[first + g];
    dw[k] = acc;
    prev = i;
  }

  DisturbanceSpec spec;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    spec.frequencies.push_back(ref.omega[idx[k]]);
    spec.amplitudes.push_back(Eigen::VectorXcd::Zero(channels));
  }
  std::mt19937_64 gen(seed);
  for (const auto& cs : spectra) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const double phase = 2.0 * std::numbers::pi * portable_uniform(gen());
      const double amp = std::sqrt(2.0 * cs.table.S[idx[k]] * dw[k]);
      spec.amplitudes[k](cs.channel) = encode_sine(amp, phase);
    }
  }
  spec.validate();
  return spec;
}

DisturbanceSpec sample_irregular_sea(const SpectrumTable& table, int p, std::uint64_t seed, int channel,
                                     int channels) {
  const ChannelSpectrum cs{channel, table};
  return sample_irregular_sea(std::span<const ChannelSpectrum>(&cs, 1), p, seed, channels);
}

double sample_variance(const DisturbanceSpec& spec, int channel, double T, int n) {
  if (n < 1 || !(T > 0.0)) throw std::invalid_argument("sample_variance: need n >= 1 and T > 0");
  if (channel < 0 || channel >= spec.channels()) throw std::invalid_argument("sample_variance: bad channel");
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = spec.evaluate(T * k / n)(channel);
    acc += v * v;
  }
  return acc / n;
}

double amplitude_variance(const DisturbanceSpec& spec, int channel) {
  double v = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double a2 = std::norm(spec.amplitudes[j](channel));
    v += spec.frequencies[j] == 0.0 ? a2 : 0.5 * a2;
  }
  return v;
}

DominantFrequencies dominant_frequencies(const SpectrumTable& table, int count) {
  table.validate();
  std::vector<std::size_t> peaks;
  const auto& s = table.S;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) continue;
    // Walk across a plateau; it is a peak only if it then descends.
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
    if (j + 1 < s.size() && s[j + 1] < s[i]) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
  DominantFrequencies out;
  const auto want = static_cast<std::size_t>(std::max(count, 0));
  out.warning = peaks.size() < want;
  for (std::size_t k = 0; k < std::min(want, peaks.size()); ++k) out.omega.push_back(table.omega[peaks[k]]);
  return out;
}

}  // namespace ouc::waves
