#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ouc/cli/cli.hpp"
#include "ouc/cli/config.hpp"
#include "ouc/errors.hpp"

using namespace ouc;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ouc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_F(CliTest, SynthesizeDefault) {
  EXPECT_EQ(run({"synthesize", "--out", path("o")}), cli::kOk) << err_.str();
  EXPECT_NE(out_.str().find("OPTIMAL"), std::string::npos);
  const auto j = nlohmann::json::parse(read(dir_ / "o" / "controller.json"));
  EXPECT_EQ(j.at("kind"), "ouc");
  EXPECT_TRUE(fs::exists(dir_ / "o" / "config.json"));
}

TEST_F(CliTest, ConfigCopiedVerbatim) {
  const std::string text = "{\n  \"seed\": 4,   \"weights\": {\"alpha\": 2}\n}\n";
  const auto cfg = write("run.json", text);
  EXPECT_EQ(run({"synthesize", "--config", cfg.string(), "--out", path("o")}), cli::kOk) << err_.str();
  EXPECT_EQ(read(dir_ / "o" / "config.json"), text);
}

TEST_F(CliTest, NonHurwitzRhoWritesFailedCertificate) {
  const auto cfg = write("bad.json",
                         R"({"rho": [-1.0, -4.11764705882353, -6.920415224913494, -5.699165479340527,
                             -1.676225140982508, 0.9860147888132398, 1.1600173986038118, 0.4874022683209292,
                             0.10034752583077955, 0.008432565195863828]})");
  EXPECT_EQ(run({"synthesize", "--config", cfg.string(), "--out", path("o")}), cli::kSynthesisFailure);
  const auto j = nlohmann::json::parse(read(dir_ / "o" / "controller.json"));
  EXPECT_EQ(j.at("certificate").at("status"), "FAILED");
  // Simulating the failed design reports the instability.
  EXPECT_EQ(run({"simulate", "--out", path("s"), "--controller", path("o/controller.json")}), cli::kInstability);
  EXPECT_FALSE(fs::exists(dir_ / "s"));
}

TEST_F(CliTest, MissingModelLeavesNoOutputs) {
  const auto cfg = write("m.json", R"({"model": "missing.json"})");
  EXPECT_EQ(run({"synthesize", "--config", cfg.string(), "--out", path("o")}), cli::kConfigError);
  EXPECT_FALSE(fs::exists(dir_ / "o"));
  EXPECT_NE(err_.str().find("missing.json"), std::string::npos);
}

TEST_F(CliTest, ConfigErrors) {
  EXPECT_EQ(run({"synthesize", "--config", write("u.json", R"({"wieghts": {}})").string(), "--out", path("o")}),
            cli::kConfigError);
  EXPECT_EQ(run({"synthesize", "--config", write("n.json", R"({"weights": {"alpha": -1}})").string()}),
            cli::kConfigError);
  EXPECT_EQ(run({"synthesize", "--config", write("f.json", R"({"frequencies": [1.15, 1.15]})").string()}),
            cli::kConfigError);
  EXPECT_EQ(run({"simulate", "--config", write("d.json", R"({"disturbance": {"type": "swell"}})").string()}),
            cli::kConfigError);
  EXPECT_EQ(run({"frobnicate"}), cli::kConfigError);
  EXPECT_EQ(run({}), cli::kConfigError);
  EXPECT_EQ(run({"--help"}), cli::kOk);
}

TEST_F(CliTest, SynthesisRefusalExitCode) {
  const auto cfg = write("z.json", R"({"weights": {"alpha": 0, "beta": 0, "gamma1": 0, "gamma2": 0}})");
  EXPECT_EQ(run({"synthesize", "--config", cfg.string(), "--out", path("o")}), cli::kSynthesisFailure);
  EXPECT_FALSE(fs::exists(dir_ / "o"));
}

TEST_F(CliTest, SimulateIsDeterministicAndConsistent) {
  ASSERT_EQ(run({"synthesize", "--out", path("c")}), cli::kOk);
  const auto cfg = write("sim.json", R"({"simulation": {"T": 200, "T0": 50, "h": 0.01},
    "disturbance": {"type": "random_harmonic", "frequencies": [1.15], "scale": 0.5}})");
  const std::vector<std::string> args{"simulate", "--config", cfg.string(), "--controller", path("c/controller.json")};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", path("a")});
  b.insert(b.end(), {"--out", path("b")});
  ASSERT_EQ(run(a), cli::kOk) << err_.str();
  ASSERT_EQ(run(b), cli::kOk);
  const std::string trace = read(dir_ / "a" / "trace.csv");
  EXPECT_EQ(trace, read(dir_ / "b" / "trace.csv"));
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "t,e_phi,e_psi,u1,u2,d_phi,d_psi");

  // Trapezoid mean of alpha e_phi^2 over [T0, T] reproduces the reported roll term.
  const auto rows = csv_rows(trace);
  double acc = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k - 1][0] < 50.0 - 1e-9) continue;
    acc += 0.5 * 0.01 * (rows[k - 1][1] * rows[k - 1][1] + rows[k][1] * rows[k][1]);
  }
  const auto cost = nlohmann::json::parse(read(dir_ / "a" / "cost.json"));
  EXPECT_NEAR(2.0 * acc / 150.0, cost.at("simulated").at("J_roll").get<double>(),
              1e-9 * cost.at("simulated").at("J_roll").get<double>());
  const double an = cost.at("analytic").at("J_total"), sim = cost.at("simulated").at("J_total");
  EXPECT_NEAR(sim, an, 0.02 * an);

  // A different seed draws different amplitudes.
  auto c = args;
  c.insert(c.end(), {"--out", path("c2"), "--seed", "99"});
  ASSERT_EQ(run(c), cli::kOk);
  EXPECT_NE(read(dir_ / "c2" / "trace.csv"), trace);
}

TEST_F(CliTest, ZeroAmplitudeSpecGivesZeroColumns) {
  ASSERT_EQ(run({"synthesize", "--out", path("c")}), cli::kOk);
  const auto cfg = write("zero.json", R"({"simulation": {"T": 20, "T0": 5, "h": 0.1},
    "disturbance": {"type": "harmonic", "components": [{"omega": 1.15, "d_phi": {"amplitude": 0}}]}})");
  ASSERT_EQ(run({"simulate", "--config", cfg.string(), "--controller", path("c/controller.json"), "--out",
                 path("o")}),
            cli::kOk)
      << err_.str();
  for (const auto& row : csv_rows(read(dir_ / "o" / "trace.csv"))) {
    for (std::size_t i = 1; i < row.size(); ++i) EXPECT_EQ(row[i], 0.0);
  }
}

TEST_F(CliTest, SimulateOpenLoopWithHeadingStep) {
  const auto cfg = write("ol.json", R"({"simulation": {"T": 300, "T0": 250, "h": 0.05},
    "disturbance": {"type": "harmonic", "psi_bar": 0.1,
                    "components": [{"omega": 1.15, "d_phi": {"amplitude": 0.2, "phase": 0.5}}]}})");
  ASSERT_EQ(run({"simulate", "--config", cfg.string(), "--out", path("o")}), cli::kOk) << err_.str();
  const auto cost = nlohmann::json::parse(read(dir_ / "o" / "cost.json"));
  EXPECT_EQ(cost.at("controller"), "open_loop");
  EXPECT_NEAR(cost.at("analytic").at("J_roll").get<double>(), 2.0 * 0.04 / 2.0, 1e-12);
}

TEST_F(CliTest, CompareSingleAndBuiltIns) {
  ASSERT_EQ(run({"synthesize", "--out", path("c")}), cli::kOk);
  ASSERT_EQ(run({"compare", "--controller", path("c/controller.json"), "--analytic-only", "--out", path("one")}),
            cli::kOk)
      << err_.str();
  const std::string one = read(dir_ / "one" / "comparison.csv");
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 2);
  EXPECT_EQ(one.substr(one.find('\n') + 1, 4), "ouc,");

  ASSERT_EQ(run({"compare", "--with-ouc", "--baselines", "--out", path("all")}), cli::kOk) << err_.str();
  const std::string all = read(dir_ / "all" / "comparison.csv");
  EXPECT_EQ(all.substr(all.find('\n') + 1, 4), "ouc,");
  EXPECT_NE(all.find("lqr,"), std::string::npos);
  EXPECT_NE(all.find("notch,"), std::string::npos);
  EXPECT_NE(all.find(",simulated,"), std::string::npos);

  EXPECT_EQ(run({"compare", "--out", path("none")}), cli::kConfigError);
}

TEST_F(CliTest, WavegenDeterministicWithSummary) {
  ASSERT_EQ(run({"wavegen", "--out", path("a"), "--seed", "3"}), cli::kOk) << err_.str();
  ASSERT_EQ(run({"wavegen", "--out", path("b"), "--seed", "3"}), cli::kOk);
  EXPECT_EQ(read(dir_ / "a" / "spec.json"), read(dir_ / "b" / "spec.json"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "realization.csv"));
  const std::string summary = read(dir_ / "a" / "summary.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')), "channel,spectral_variance,amplitude_variance,realized_variance");
  std::istringstream in(summary);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream ls(line.substr(line.find(',') + 1));
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    EXPECT_NEAR(v[1], v[0], 0.02 * v[0]) << line;
  }
}

TEST_F(CliTest, WavegenOptionsAndErrors) {
  const auto cfg = write("w.json", R"({"wavegen": {"realization": false},
    "disturbance": {"type": "irregular", "p": 200,
      "spectra": {"d_phi": {"builtin": {"K_w": 2.0, "omega0": 0.9, "zeta0": 0.2}}}}})");
  ASSERT_EQ(run({"wavegen", "--config", cfg.string(), "--out", path("o")}), cli::kOk) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "o" / "realization.csv"));
  const auto spec = nlohmann::json::parse(read(dir_ / "o" / "spec.json"));
  EXPECT_EQ(spec.at("components").size(), 200u);

  const auto big = write("big.json", R"({"disturbance": {"type": "irregular", "p": 5000}})");
  EXPECT_EQ(run({"wavegen", "--config", big.string(), "--out", path("big")}), cli::kConfigError);
  EXPECT_FALSE(fs::exists(dir_ / "big"));
}

TEST_F(CliTest, SpectrumFromCsv) {
  write("s.csv", "omega_rad_s,S\n0.5,0.1\n1.0,0.4\n1.5,0.2\n2.0,0.05\n");
  const auto cfg = write("c.json", R"({"disturbance": {"type": "irregular", "p": 4,
      "spectra": {"d_phi": {"csv": "s.csv"}}}})");
  ASSERT_EQ(run({"wavegen", "--config", cfg.string(), "--out", path("o")}), cli::kOk) << err_.str();
  const auto rc = cli::load_config(cfg);
  EXPECT_EQ(cli::build_disturbance(rc).size(), 4u);
}

TEST(Config, DefaultsMirrorBenchmark) {
  const auto c = cli::parse_config("{}", ".");
  EXPECT_EQ(c.weights.alpha, 2.0);
  EXPECT_EQ(c.weights.gamma1, 10.0);
  EXPECT_EQ(c.frequencies, std::vector<double>{1.15});
  EXPECT_EQ(c.mu, 1.7);
  EXPECT_EQ(c.sim.T, 600.0);
  EXPECT_EQ(c.sim.T0, 100.0);
  const auto d = cli::build_disturbance(c);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.frequencies[0], 1.15);
  EXPECT_THROW(cli::parse_config(R"({"simulation": {"T": 10, "T0": 20}})", "."), ConfigError);
  EXPECT_THROW(cli::parse_config(R"({"mu": 0})", "."), ConfigError);
  EXPECT_THROW(cli::parse_config("[1]", "."), ConfigError);
}
