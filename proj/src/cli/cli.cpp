#include "ouc/cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ouc/cli/config.hpp"
#include "ouc/errors.hpp"
#include "ouc/io/json_io.hpp"
#include "ouc/lti/simulate.hpp"

namespace ouc::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> controllers;
  bool with_ouc = false;
  bool with_lqr = false;
  bool with_notch = false;
  bool baselines = false;
  bool analytic_only = false;
};

// Files are collected here and only written once the command has succeeded
// (or has a result worth keeping, such as a failed certificate).
using Outputs = std::map<std::string, std::string>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_outputs(const std::filesystem::path& dir, const Outputs& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, text] : files) {
    std::ofstream f(dir / name, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  }
}

RunConfig configure(const Options& o) {
  RunConfig cfg;
  if (!o.config.empty()) {
    cfg = load_config(o.config);
  } else {
    cfg = parse_config("{}\n", std::filesystem::current_path());
    cfg.output_dir = "out";
  }
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

synth::OucController run_synthesis(const vessel::PlantModel& plant, const RunConfig& cfg) {
  synth::SynthesisOptions so;
  so.mu = cfg.mu;
  so.rho = cfg.rho;
  return synth::synthesize(plant, cfg.weights, cfg.frequencies, so);
}

std::string certificate_summary(const synth::Certificate& c) {
  std::ostringstream os;
  os << "certificate: " << synth::to_string(c.status) << "\n";
  os << "  stable: " << (c.stable ? "yes" : "no") << " (margin " << num(c.stability_margin) << ")\n";
  os << "  rho Hurwitz: " << (c.rho_hurwitz ? "yes" : "no") << "\n";
  for (std::size_t j = 0; j < c.frequencies.size(); ++j) {
    os << "  residual at w = " << num(c.frequencies[j]) << ": " << num(c.residuals[j]) << "\n";
  }
  os << "  min eig Pi: " << num(c.pi_min_eig) << "\n";
  for (const auto& d : c.diagnostics) os << "  " << d << "\n";
  return os.str();
}

io::AnyController read_controller(const std::string& path) {
  return io::controller_from_json(io::read_json_file(path));
}

int cmd_synthesize(const Options& o, std::ostream& out) {
  const RunConfig cfg = configure(o);
  const auto plant = load_plant(cfg);
  const auto ctrl = run_synthesis(plant, cfg);
  Outputs files{{"config.json", cfg.raw_text},
                {"controller.json", io::dump(io::to_json(io::AnyController(ctrl)))}};
  write_outputs(cfg.output_dir, files);
  out << certificate_summary(ctrl.certificate);
  out << "wrote " << (cfg.output_dir / "controller.json").string() << "\n";
  return ctrl.certificate.status == synth::Status::Optimal ? kOk : kSynthesisFailure;
}

json cost_json(const evaluate::CostReport& r) {
  return {{"J_total", r.J_total}, {"J_roll", r.J_roll}, {"J_yaw", r.J_yaw}, {"J_u1", r.J_u1},
          {"J_u2", r.J_u2},       {"method", r.method}, {"T", r.T},         {"T0", r.T0}, {"h", r.h}};
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.controllers.size() > 1) throw ConfigError("simulate takes at most one --controller");
  const RunConfig cfg = configure(o);
  const auto plant = load_plant(cfg);
  const auto spec = build_disturbance(cfg);
  lti::StateSpace loop;
  std::string name = "open_loop";
  if (o.controllers.empty()) {
    loop = evaluate::open_loop(plant);
  } else {
    const auto c = read_controller(o.controllers.front());
    name = io::kind(c);
    loop = io::closed_loop(plant, c);
  }
  const auto sim = evaluate::simulated_cost(loop, spec, cfg.weights, cfg.sim);
  const auto analytic = evaluate::analytic_cost(loop, spec, cfg.weights);
  const auto trace = lti::simulate(loop, spec, cfg.sim.T, cfg.sim.h);

  std::string csv = "t,e_phi,e_psi,u1,u2,d_phi,d_psi\n";
  csv.reserve(static_cast<std::size_t>(trace.t.size()) * 160);
  for (Eigen::Index k = 0; k < trace.t.size(); ++k) {
    csv += num(trace.t(k));
    for (int i = 0; i < 4; ++i) csv += ',' + num(trace.y(k, i));
    csv += ',' + num(trace.d(k, waves::kDPhi)) + ',' + num(trace.d(k, waves::kDPsi)) + '\n';
  }
  json cost = {{"controller", name}, {"simulated", cost_json(sim)}, {"analytic", cost_json(analytic)}};
  write_outputs(cfg.output_dir, {{"config.json", cfg.raw_text}, {"trace.csv", csv}, {"cost.json", io::dump(cost)}});
  out << name << ": J simulated " << num(sim.J_total) << ", analytic " << num(analytic.J_total) << "\n";
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const RunConfig cfg = configure(o);
  const auto plant = load_plant(cfg);
  const auto spec = build_disturbance(cfg);
  std::vector<evaluate::NamedLoop> loops;
  for (const auto& path : o.controllers) {
    const auto c = read_controller(path);
    std::string name = std::filesystem::path(path).stem().string();
    if (name == "controller") name = io::kind(c);
    loops.push_back({name, io::closed_loop(plant, c)});
  }
  if (o.with_ouc) {
    const auto ctrl = run_synthesis(plant, cfg);
    if (ctrl.certificate.status != synth::Status::Optimal) {
      throw SynthesisError("certificate", "built-in OUC synthesis returned FAILED");
    }
    loops.push_back({"ouc", evaluate::ouc_loop(plant, ctrl)});
  }
  if (o.with_lqr || o.baselines) {
    loops.push_back({"lqr", baselines::lqr_closed_loop(baselines::design_lqr(plant, cfg.lqr))});
  }
  if (o.with_notch || o.baselines) loops.push_back({"notch", evaluate::notch_loop(plant, cfg.notch)});
  if (loops.empty()) throw ConfigError("compare needs --controller files or built-in controller flags");

  const auto table = evaluate::compare(loops, spec, cfg.weights, cfg.sim, !o.analytic_only);
  const std::string csv = evaluate::comparison_csv(table);
  write_outputs(cfg.output_dir, {{"config.json", cfg.raw_text}, {"comparison.csv", csv}});
  out << csv;
  return kOk;
}

int cmd_wavegen(const Options& o, std::ostream& out) {
  const RunConfig cfg = configure(o);
  const auto sea = irregular_settings(cfg);
  waves::DisturbanceSpec spec;
  try {
    spec = waves::sample_irregular_sea(sea.spectra, sea.p, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("wavegen: ") + e.what());
  }
  const int n = static_cast<int>(std::llround(cfg.wavegen_T / cfg.wavegen_h));
  static const char* kNames[] = {"psi_bar", "d_phi", "d_psi"};

  std::string summary = "channel,spectral_variance,amplitude_variance,realized_variance\n";
  for (const auto& cs : sea.spectra) {
    summary += std::string(kNames[cs.channel]) + ',' + num(cs.table.variance()) + ',' +
               num(waves::amplitude_variance(spec, cs.channel)) + ',' +
               num(waves::sample_variance(spec, cs.channel, cfg.wavegen_T, n)) + '\n';
  }
  Outputs files{{"config.json", cfg.raw_text}, {"spec.json", io::dump(io::to_json(spec))}, {"summary.csv", summary}};
  if (cfg.wavegen_realization) {
    std::string csv = "t,psi_bar,d_phi,d_psi\n";
    for (int k = 0; k < n; ++k) {
      const double t = k * cfg.wavegen_h;
      const Eigen::VectorXd d = spec.evaluate(t);
      csv += num(t) + ',' + num(d(0)) + ',' + num(d(1)) + ',' + num(d(2)) + '\n';
    }
    files.emplace("realization.csv", std::move(csv));
  }
  write_outputs(cfg.output_dir, files);
  out << summary;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal universal controller synthesis for ship roll damping", "oucroll"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory (overrides the config)");
    sub->add_option("--seed", o.seed, "random seed (overrides the config)");
  };
  auto* syn = app.add_subcommand("synthesize", "synthesize an OUC and write controller.json");
  auto* sim = app.add_subcommand("simulate", "simulate one loop and write trace.csv and cost.json");
  auto* cmp = app.add_subcommand("compare", "rank controllers by cost and write comparison.csv");
  auto* wav = app.add_subcommand("wavegen", "sample an irregular sea and write spec.json");
  for (auto* s : {syn, sim, cmp, wav}) common(s);
  sim->add_option("--controller", o.controllers, "controller JSON (open loop when omitted)");
  cmp->add_option("--controller", o.controllers, "controller JSON files");
  cmp->add_flag("--with-ouc", o.with_ouc, "synthesize an OUC from the config and include it");
  cmp->add_flag("--with-lqr", o.with_lqr, "include the LQR baseline");
  cmp->add_flag("--with-notch", o.with_notch, "include the notch baseline");
  cmp->add_flag("--baselines", o.baselines, "include both baselines");
  cmp->add_flag("--analytic-only", o.analytic_only, "skip the time-domain simulation");

  std::vector<const char*> argv{"oucroll"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (syn->parsed()) return cmd_synthesize(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    return cmd_wavegen(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const AssemblyError& e) {
    err << "model error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SynthesisError& e) {
    err << "synthesis failed at step \"" << e.step() << "\": " << e.what() << "\n";
    return kSynthesisFailure;
  } catch (const InstabilityError& e) {
    err << "unstable: " << e.what() << "\n";
    return kInstability;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << "\n";
    return kInstability;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ouc::cli
