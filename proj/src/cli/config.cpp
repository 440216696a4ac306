#include "ouc/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ouc/errors.hpp"
#include "ouc/io/json_io.hpp"

namespace ouc::cli {

using nlohmann::json;

namespace {

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items()) {
    if (!ok.count(k)) throw ConfigError("unknown key \"" + k + "\" in " + where);
  }
}

double number(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
  return d;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::filesystem::path base_dir_of(const RunConfig& cfg) {
  return cfg.source.has_parent_path() ? cfg.source.parent_path() : std::filesystem::path(".");
}

int channel_index(const std::string& name) {
  if (name == "psi_bar") return waves::kPsiBar;
  if (name == "d_phi") return waves::kDPhi;
  if (name == "d_psi") return waves::kDPsi;
  throw ConfigError("unknown disturbance channel \"" + name + "\"");
}

waves::SpectrumTable spectrum_from(const json& j, const RunConfig& cfg, const waves::FrequencyGrid& grid,
                                   const std::string& where) {
  allow_keys(j, where, {"builtin", "csv"});
  if (j.contains("csv") == j.contains("builtin")) throw ConfigError(where + " needs exactly one of builtin, csv");
  if (j.contains("csv")) {
    try {
      return waves::read_spectrum_csv(resolve(base_dir_of(cfg), j.at("csv").get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    } catch (const json::exception& e) {
      throw ConfigError(where + ".csv must be a path string");
    }
  }
  const json& b = j.at("builtin");
  const std::string w = where + ".builtin";
  allow_keys(b, w, {"K_w", "omega0", "zeta0"});
  try {
    return waves::shaping_filter_spectrum(number(b, "K_w", 1.0, w), number(b, "omega0", 1.15, w),
                                          number(b, "zeta0", 0.1, w), grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(w + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  allow_keys(j, "config", {"model", "weights", "frequencies", "mu", "rho", "simulation", "seed", "output_dir",
                           "disturbance", "lqr", "notch", "wavegen"});
  RunConfig c;
  c.raw_text = text;
  c.source = base_dir / "config.json";
  try {
    if (j.contains("model")) c.model = resolve(base_dir, j.at("model").get<std::string>());
    if (j.contains("weights")) {
      const json& w = j.at("weights");
      allow_keys(w, "weights", {"alpha", "beta", "gamma1", "gamma2"});
      c.weights.alpha = number(w, "alpha", c.weights.alpha, "weights");
      c.weights.beta = number(w, "beta", c.weights.beta, "weights");
      c.weights.gamma1 = number(w, "gamma1", c.weights.gamma1, "weights");
      c.weights.gamma2 = number(w, "gamma2", c.weights.gamma2, "weights");
      c.weights.validate();
    }
    if (j.contains("frequencies")) {
      c.frequencies = j.at("frequencies").get<std::vector<double>>();
      if (c.frequencies.empty()) throw ConfigError("config.frequencies must not be empty");
      (void)synth::with_zero_frequency(c.frequencies);
    }
    c.mu = number(j, "mu", c.mu, "config");
    if (!(c.mu > 0.0)) throw ConfigError("config.mu must be positive");
    if (j.contains("rho")) {
      c.rho = poly::Polynomial(j.at("rho").get<std::vector<double>>());
      if (c.rho->is_zero()) throw ConfigError("config.rho must not be the zero polynomial");
    }
    if (j.contains("simulation")) {
      const json& s = j.at("simulation");
      allow_keys(s, "simulation", {"T", "T0", "h"});
      c.sim.T = number(s, "T", c.sim.T, "simulation");
      c.sim.T0 = number(s, "T0", c.sim.T0, "simulation");
      c.sim.h = number(s, "h", c.sim.h, "simulation");
      if (!(c.sim.h > 0.0) || !(c.sim.T0 >= 0.0) || !(c.sim.T > c.sim.T0)) {
        throw ConfigError("simulation: need h > 0 and T > T0 >= 0");
      }
    }
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw ConfigError("config.seed must be a nonnegative integer");
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    else c.output_dir = base_dir / "out";
    if (j.contains("disturbance")) c.disturbance = j.at("disturbance");
    if (j.contains("lqr")) {
      const json& l = j.at("lqr");
      allow_keys(l, "lqr", {"q_phi", "q_psi", "r1", "r2"});
      c.lqr = {number(l, "q_phi", 100.0, "lqr"), number(l, "q_psi", 1.0, "lqr"), number(l, "r1", 0.1, "lqr"),
               number(l, "r2", 0.01, "lqr")};
      if (c.lqr.q_phi < 0 || c.lqr.q_psi < 0 || !(c.lqr.r1 > 0) || !(c.lqr.r2 > 0)) {
        throw ConfigError("lqr: need q >= 0 and r > 0");
      }
    }
    if (j.contains("notch")) {
      const json& n = j.at("notch");
      allow_keys(n, "notch", {"gain", "center", "damping", "routing"});
      c.notch = baselines::notch_controller(
          baselines::notch_routing_from_string(n.value("routing", std::string("rudder"))),
          number(n, "gain", -10.0, "notch"), number(n, "center", 1.15, "notch"), number(n, "damping", 0.1, "notch"));
    }
    if (j.contains("wavegen")) {
      const json& w = j.at("wavegen");
      allow_keys(w, "wavegen", {"realization", "h", "T"});
      c.wavegen_realization = w.value("realization", true);
      c.wavegen_h = number(w, "h", c.wavegen_h, "wavegen");
      c.wavegen_T = number(w, "T", c.wavegen_T, "wavegen");
      if (!(c.wavegen_h > 0.0) || !(c.wavegen_T > 0.0)) throw ConfigError("wavegen: need h > 0 and T > 0");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_config(ss.str(), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
  c.source = path;
  return c;
}

vessel::PlantModel load_plant(const RunConfig& cfg) {
  vessel::ModelFile m{vessel::benchmark_vessel(), vessel::benchmark_autopilot()};
  if (cfg.model) m = vessel::load_model(*cfg.model);
  try {
    return vessel::assemble_plant(m.vessel, m.autopilot);
  } catch (const AssemblyError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

IrregularSea irregular_settings(const RunConfig& cfg) {
  const json empty = json::object();
  const json& d = cfg.disturbance.is_object() && cfg.disturbance.value("type", "") == "irregular" ? cfg.disturbance
                                                                                                  : empty;
  if (!d.empty()) allow_keys(d, "disturbance", {"type", "p", "grid", "spectra"});
  IrregularSea sea;
  waves::FrequencyGrid grid;
  try {
    if (d.contains("p")) {
      if (!d.at("p").is_number_integer()) throw ConfigError("disturbance.p must be an integer");
      sea.p = d.at("p").get<int>();
    }
    if (d.contains("grid")) {
      const json& g = d.at("grid");
      allow_keys(g, "disturbance.grid", {"omega_max", "points"});
      grid.omega_max = number(g, "omega_max", grid.omega_max, "disturbance.grid");
      if (g.contains("points")) grid.points = g.at("points").get<int>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("disturbance: ") + e.what());
  }
  if (sea.p < 1) throw ConfigError("disturbance.p must be >= 1");
  json spectra = {{"d_phi", {{"builtin", {{"K_w", 1.0}}}}}, {"d_psi", {{"builtin", {{"K_w", 0.3}}}}}};
  if (d.contains("spectra")) spectra = d.at("spectra");
  allow_keys(spectra, "disturbance.spectra", {"psi_bar", "d_phi", "d_psi"});
  for (const auto& [name, block] : spectra.items()) {
    sea.spectra.push_back({channel_index(name), spectrum_from(block, cfg, grid, "disturbance.spectra." + name)});
  }
  if (sea.spectra.empty()) throw ConfigError("disturbance.spectra is empty");
  return sea;
}

waves::DisturbanceSpec build_disturbance(const RunConfig& cfg) {
  const json& d = cfg.disturbance;
  waves::DisturbanceSpec spec;
  if (d.is_null()) {
    // A unit roll sine at the first nonzero configured frequency.
    const auto it = std::find_if(cfg.frequencies.begin(), cfg.frequencies.end(), [](double w) { return w > 0.0; });
    if (it == cfg.frequencies.end()) throw ConfigError("no nonzero frequency for the default disturbance");
    return waves::single_tone(*it, waves::kDPhi, waves::encode_sine(1.0, 0.0));
  }
  if (!d.is_object() || !d.contains("type")) throw ConfigError("disturbance needs a \"type\"");
  const std::string type = d.value("type", "");
  try {
    if (type == "harmonic") {
      allow_keys(d, "disturbance", {"type", "components", "psi_bar"});
      std::vector<std::pair<double, Eigen::VectorXcd>> comps;
      for (const auto& c : d.value("components", json::array())) {
        allow_keys(c, "disturbance.components[]", {"omega", "d_phi", "d_psi"});
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(waves::kShipChannels);
        const double w = number(c, "omega", -1.0, "disturbance.components[]");
        for (const char* ch : {"d_phi", "d_psi"}) {
          if (!c.contains(ch)) continue;
          const json& s = c.at(ch);
          allow_keys(s, std::string("disturbance.components[].") + ch, {"amplitude", "phase"});
          const double amp = number(s, "amplitude", 0.0, ch);
          const double ph = number(s, "phase", 0.0, ch);
          // At w = 0 a sine is zero; the constant level is amp * sin(phase).
          a(channel_index(ch)) = w == 0.0 ? std::complex<double>(amp * std::sin(ph), 0.0) : waves::encode_sine(amp, ph);
        }
        comps.emplace_back(w, a);
      }
      const double psi_bar = number(d, "psi_bar", 0.0, "disturbance");
      if (psi_bar != 0.0) {
        auto it = std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.first == 0.0; });
        if (it == comps.end()) {
          comps.emplace_back(0.0, Eigen::VectorXcd::Zero(waves::kShipChannels));
          it = comps.end() - 1;
        }
        it->second(waves::kPsiBar) = psi_bar;
      }
      std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [w, a] : comps) {
        spec.frequencies.push_back(w);
        spec.amplitudes.push_back(a);
      }
    } else if (type == "random_harmonic") {
      allow_keys(d, "disturbance", {"type", "frequencies", "scale", "channels"});
      std::vector<double> f = d.value("frequencies", cfg.frequencies);
      std::sort(f.begin(), f.end());
      const double scale = number(d, "scale", 1.0, "disturbance");
      const auto names = d.value("channels", std::vector<std::string>{"d_phi", "d_psi"});
      evaluate::PortableNormal rng(cfg.seed);
      for (double w : f) {
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(waves::kShipChannels);
        for (const auto& n : names) {
          const double re = rng();
          const double im = rng();
          a(channel_index(n)) = scale * (w == 0.0 ? std::complex<double>(re, 0.0) : std::complex<double>(re, im));
        }
        spec.frequencies.push_back(w);
        spec.amplitudes.push_back(a);
      }
    } else if (type == "irregular") {
      const auto sea = irregular_settings(cfg);
      return waves::sample_irregular_sea(sea.spectra, sea.p, cfg.seed);
    } else if (type == "file") {
      allow_keys(d, "disturbance", {"type", "path"});
      return io::disturbance_from_json(io::read_json_file(resolve(base_dir_of(cfg), d.at("path").get<std::string>())));
    } else {
      throw ConfigError("unknown disturbance type \"" + type + "\"");
    }
    spec.validate();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("disturbance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("disturbance: ") + e.what());
  }
  return spec;
}

}  // namespace ouc::cli
