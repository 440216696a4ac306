#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ouc/baselines/baselines.hpp"
#include "ouc/evaluate/evaluate.hpp"
#include "ouc/synth/ouc.hpp"
#include "ouc/vessel/vessel.hpp"
#include "ouc/waves/spectrum.hpp"

namespace ouc::cli {

/// One run's settings. Defaults reproduce the benchmark study.
struct RunConfig {
  std::filesystem::path source;  ///< the config file itself
  std::string raw_text;          ///< its bytes, copied verbatim into outputs
  std::optional<std::filesystem::path> model;  ///< empty: built-in benchmark
  synth::CostWeights weights;
  std::vector<double> frequencies{1.15};
  double mu = 1.7;
  std::optional<poly::Polynomial> rho;
  evaluate::SimParams sim;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  nlohmann::json disturbance;  ///< validated lazily by build_disturbance
  baselines::LqrWeights lqr;
  baselines::NotchController notch = baselines::notch_controller();
  bool wavegen_realization = true;
  double wavegen_h = 0.1;
  double wavegen_T = 600.0;
};

/// Throws ConfigError for unreadable files, unknown keys or invalid values.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

vessel::PlantModel load_plant(const RunConfig& cfg);

/// Disturbance from the "disturbance" block (types harmonic, random_harmonic,
/// irregular, file). Uses cfg.seed for random draws. Throws ConfigError.
waves::DisturbanceSpec build_disturbance(const RunConfig& cfg);

/// The irregular-sea block (config or defaults) with its spectra.
struct IrregularSea {
  int p = 1000;
  std::vector<waves::ChannelSpectrum> spectra;
};
IrregularSea irregular_settings(const RunConfig& cfg);

}  // namespace ouc::cli
