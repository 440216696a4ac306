#include "ouc/io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ouc/errors.hpp"
#include "ouc/evaluate/evaluate.hpp"

namespace ouc::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

json cplx(const Eigen::VectorXcd& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

std::string kind(const AnyController& c) {
  switch (c.index()) {
    case 0:
      return "ouc";
    case 1:
      return "lqr";
    default:
      return "notch";
  }
}

lti::StateSpace closed_loop(const vessel::PlantModel& plant, const AnyController& c) {
  if (const auto* o = std::get_if<synth::OucController>(&c)) return evaluate::ouc_loop(plant, *o);
  if (const auto* l = std::get_if<baselines::LqrDesign>(&c)) return baselines::lqr_closed_loop(*l);
  return evaluate::notch_loop(plant, std::get<baselines::NotchController>(c));
}

json to_json(const poly::Polynomial& p) {
  json a = json::array();
  for (double c : p.coeffs()) a.push_back(c);
  return a;
}

json to_json(const poly::MatrixPolynomial& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

json to_json(const synth::Certificate& c) {
  json res = json::array();
  for (std::size_t k = 0; k < c.frequencies.size(); ++k) {
    res.push_back({{"omega", c.frequencies[k]}, {"residual", c.residuals[k]}});
  }
  return {{"status", synth::to_string(c.status)},
          {"stable", c.stable},
          {"stability_margin", c.stability_margin},
          {"rho_hurwitz", c.rho_hurwitz},
          {"interpolation_ok", c.interpolation_ok},
          {"interpolation_residuals", res},
          {"pi_min_eig", c.pi_min_eig},
          {"pi_ok", c.pi_ok},
          {"diagnostics", c.diagnostics}};
}

json to_json(const AnyController& any) {
  json j;
  j["kind"] = kind(any);
  if (const auto* o = std::get_if<synth::OucController>(&any)) {
    j["N"] = to_json(o->N);
    j["M"] = to_json(o->M);
    j["r"] = to_json(o->r);
    j["rho"] = to_json(o->rho);
    j["frequencies"] = o->frequencies;
    j["certificate"] = to_json(o->certificate);
  } else if (const auto* l = std::get_if<baselines::LqrDesign>(&any)) {
    j["weights"] = {{"q_phi", l->weights.q_phi}, {"q_psi", l->weights.q_psi}, {"r1", l->weights.r1},
                    {"r2", l->weights.r2}};
    j["K"] = to_json(l->K);
    j["P"] = to_json(l->P);
    j["residual"] = l->residual;
    j["margin"] = l->margin;
    j["realization"] = {{"A", to_json(l->plant.A)}, {"B", to_json(l->plant.B)}, {"C", to_json(l->plant.C)},
                        {"D", to_json(l->plant.D)}, {"E", to_json(l->plant.E)}, {"G", to_json(l->plant.G)}};
  } else {
    const auto& n = std::get<baselines::NotchController>(any);
    j["gain"] = n.gain;
    j["center"] = n.center;
    j["damping"] = n.damping;
    j["routing"] = baselines::to_string(n.routing);
  }
  return j;
}

json to_json(const waves::DisturbanceSpec& spec) {
  json comps = json::array();
  for (std::size_t k = 0; k < spec.size(); ++k) {
    json c = cplx(spec.amplitudes[k]);
    c["omega"] = spec.frequencies[k];
    comps.push_back(c);
  }
  return {{"channels", {"psi_bar", "d_phi", "d_psi"}}, {"components", comps}};
}

poly::Polynomial polynomial_from_json(const json& j) {
  return guarded("polynomial", [&] { return poly::Polynomial(j.get<std::vector<double>>()); });
}

poly::MatrixPolynomial matrix_polynomial_from_json(const json& j) {
  return guarded("matrix polynomial", [&] {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
      throw std::invalid_argument("expected a nonempty array of rows");
    }
    const auto rows = static_cast<int>(j.size());
    const auto cols = static_cast<int>(j[0].size());
    poly::MatrixPolynomial m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      if (j[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(cols)) {
        throw std::invalid_argument("ragged rows");
      }
      for (int k = 0; k < cols; ++k) {
        m(i, k) = poly::Polynomial(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<std::vector<double>>());
      }
    }
    return m;
  });
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const json& data = j.at("data");
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows)) {
      throw std::invalid_argument("row count mismatch");
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto row = data[static_cast<std::size_t>(i)].get<std::vector<double>>();
      if (row.size() != static_cast<std::size_t>(cols)) throw std::invalid_argument("column count mismatch");
      for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
    }
    return m;
  });
}

AnyController controller_from_json(const json& j) {
  const std::string k = guarded("controller", [&] { return j.at("kind").get<std::string>(); });
  if (k == "ouc") {
    synth::OucController c;
    c.N = matrix_polynomial_from_json(guarded("controller", [&] { return j.at("N"); }));
    c.M = matrix_polynomial_from_json(guarded("controller", [&] { return j.at("M"); }));
    c.r = matrix_polynomial_from_json(guarded("controller", [&] { return j.at("r"); }));
    c.rho = polynomial_from_json(guarded("controller", [&] { return j.at("rho"); }));
    guarded("controller", [&] {
      c.frequencies = j.at("frequencies").get<std::vector<double>>();
      const json& cert = j.at("certificate");
      c.certificate.status = cert.at("status").get<std::string>() == "OPTIMAL" ? synth::Status::Optimal
                                                                                : synth::Status::Failed;
      c.certificate.stable = cert.at("stable").get<bool>();
      c.certificate.stability_margin = cert.at("stability_margin").get<double>();
      c.certificate.rho_hurwitz = cert.at("rho_hurwitz").get<bool>();
      c.certificate.interpolation_ok = cert.at("interpolation_ok").get<bool>();
      for (const auto& r : cert.at("interpolation_residuals")) {
        c.certificate.frequencies.push_back(r.at("omega").get<double>());
        c.certificate.residuals.push_back(r.at("residual").is_null() ? std::numeric_limits<double>::infinity()
                                                                     : r.at("residual").get<double>());
      }
      c.certificate.pi_min_eig = cert.at("pi_min_eig").get<double>();
      c.certificate.pi_ok = cert.at("pi_ok").get<bool>();
      c.certificate.diagnostics = cert.at("diagnostics").get<std::vector<std::string>>();
      return 0;
    });
    if (c.N.rows() != 2 || c.N.cols() != 2 || c.M.rows() != 2 || c.M.cols() != 2) {
      throw ConfigError("controller: N and M must be 2x2");
    }
    return c;
  }
  if (k == "lqr") {
    baselines::LqrDesign d;
    guarded("controller", [&] {
      const json& w = j.at("weights");
      d.weights = {w.at("q_phi").get<double>(), w.at("q_psi").get<double>(), w.at("r1").get<double>(),
                   w.at("r2").get<double>()};
      d.K = matrix_from_json(j.at("K"));
      d.P = matrix_from_json(j.at("P"));
      d.residual = j.at("residual").get<double>();
      d.margin = j.at("margin").get<double>();
      const json& r = j.at("realization");
      d.plant.A = matrix_from_json(r.at("A"));
      d.plant.B = matrix_from_json(r.at("B"));
      d.plant.C = matrix_from_json(r.at("C"));
      d.plant.D = matrix_from_json(r.at("D"));
      d.plant.E = matrix_from_json(r.at("E"));
      d.plant.G = matrix_from_json(r.at("G"));
      d.plant.validate();
      return 0;
    });
    if (d.K.rows() != d.plant.inputs() || d.K.cols() != d.plant.states()) {
      throw ConfigError("controller: LQR gain does not match its realization");
    }
    return d;
  }
  if (k == "notch") {
    return guarded("controller", [&] {
      return baselines::notch_controller(baselines::notch_routing_from_string(j.at("routing").get<std::string>()),
                                         j.at("gain").get<double>(), j.at("center").get<double>(),
                                         j.at("damping").get<double>());
    });
  }
  throw ConfigError("controller: unknown kind \"" + k + "\"");
}

waves::DisturbanceSpec disturbance_from_json(const json& j) {
  return guarded("disturbance spec", [&] {
    waves::DisturbanceSpec spec;
    for (const auto& c : j.at("components")) {
      const auto re = c.at("re").get<std::vector<double>>();
      const auto im = c.at("im").get<std::vector<double>>();
      if (re.size() != im.size()) throw std::invalid_argument("re/im length mismatch");
      Eigen::VectorXcd d(static_cast<Eigen::Index>(re.size()));
      for (std::size_t i = 0; i < re.size(); ++i) d(static_cast<Eigen::Index>(i)) = {re[i], im[i]};
      spec.frequencies.push_back(c.at("omega").get<double>());
      spec.amplitudes.push_back(d);
    }
    spec.validate();
    return spec;
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ouc::io
