#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ouc/errors.hpp"
#include "ouc/vessel/vessel.hpp"

namespace ouc::vessel {

namespace {

using nlohmann::json;

Polynomial factored(const json& j, const std::string& name) {
  if (!j.contains(name)) throw ConfigError("model: missing field \"" + name + "\"");
  const json& f = j.at(name);
  if (!f.is_object()) throw ConfigError("model: \"" + name + "\" must be an object");
  for (const auto& [key, _] : f.items()) {
    if (key != "real_roots" && key != "complex_pairs" && key != "gain") {
      throw ConfigError("model: unknown field \"" + name + "." + key + "\"");
    }
  }
  try {
    Polynomial p = Polynomial::constant(f.value("gain", 1.0));
    for (double r : f.value("real_roots", std::vector<double>{})) p *= Polynomial{-r, 1.0};
    for (const auto& pair : f.value("complex_pairs", std::vector<std::vector<double>>{})) {
      if (pair.size() != 2) throw ConfigError("model: complex pair in \"" + name + "\" needs [re, im]");
      const double re = pair[0];
      const double im = pair[1];
      p *= Polynomial{re * re + im * im, -2.0 * re, 1.0};
    }
    if (p.is_zero()) throw ConfigError("model: \"" + name + "\" has zero gain");
    return p;
  } catch (const json::exception& e) {
    throw ConfigError("model: bad field \"" + name + "\": " + e.what());
  }
}

}  // namespace

ModelFile parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("model: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "a" && key != "b_phi_r" && key != "b_psi_r" && key != "b_phi_f" && key != "b_psi_f" &&
        key != "autopilot") {
      throw ConfigError("model: unknown field \"" + key + "\"");
    }
  }
  ModelFile m;
  m.vessel.a = factored(j, "a");
  m.vessel.b_phi_r = factored(j, "b_phi_r");
  m.vessel.b_psi_r = factored(j, "b_psi_r");
  m.vessel.b_phi_f = factored(j, "b_phi_f");
  m.vessel.b_psi_f = factored(j, "b_psi_f");
  if (j.contains("autopilot")) {
    const json& ap = j.at("autopilot");
    if (!ap.is_object()) throw ConfigError("model: \"autopilot\" must be an object");
    for (const auto& [key, _] : ap.items()) {
      if (key != "a_ap" && key != "b_ap") throw ConfigError("model: unknown field \"autopilot." + key + "\"");
    }
    m.autopilot.a_ap = factored(j.at("autopilot"), "a_ap");
    m.autopilot.b_ap = factored(j.at("autopilot"), "b_ap");
  } else {
    m.autopilot = benchmark_autopilot();
  }
  return m;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("model: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace ouc::vessel
