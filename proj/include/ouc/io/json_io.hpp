#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "ouc/baselines/baselines.hpp"
#include "ouc/lti/state_space.hpp"
#include "ouc/synth/ouc.hpp"
#include "ouc/waves/disturbance.hpp"

namespace ouc::io {

using nlohmann::json;

/// Any controller the tools can store and close around the plant.
using AnyController = std::variant<synth::OucController, baselines::LqrDesign, baselines::NotchController>;

std::string kind(const AnyController& c);

/// Closed loop with input d and output [e_phi, e_psi, u1, u2].
lti::StateSpace closed_loop(const vessel::PlantModel& plant, const AnyController& c);

// Doubles are written with 17 significant digits, so every value reads back bit-identically.
json to_json(const poly::Polynomial& p);
json to_json(const poly::MatrixPolynomial& m);
json to_json(const Eigen::MatrixXd& m);
json to_json(const synth::Certificate& c);
json to_json(const AnyController& c);
json to_json(const waves::DisturbanceSpec& spec);

/// All readers throw ConfigError on malformed input.
poly::Polynomial polynomial_from_json(const json& j);
poly::MatrixPolynomial matrix_polynomial_from_json(const json& j);
Eigen::MatrixXd matrix_from_json(const json& j);
AnyController controller_from_json(const json& j);
waves::DisturbanceSpec disturbance_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
std::string dump(const json& j);

}  // namespace ouc::io
