// Copyright 2026 The cqec-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cqec/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace cqec::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("cqec_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    out_.str({});
    err_.str({});
    return main_entry(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

ConfigError resolve_error(const json& raw) {
  try {
    resolve_config(raw);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for " << raw.dump();
  return ConfigError("", "");
}

TEST(Config, LambdaRatioScalesKappa) {
  std::ostringstream sink;
  const auto raw = parse_arguments(
      {"--scheme", "direct", "--gamma", "0.05", "--kappa", "10", "--lambda-ratio", "2.5"}, sink);
  ASSERT_TRUE(raw);
  const RunConfig c = resolve_config(*raw);
  EXPECT_EQ(c.scheme, Scheme::Direct);
  EXPECT_DOUBLE_EQ(c.lambda, 25.0);
  EXPECT_DOUBLE_EQ(c.kappa, 10.0);
  EXPECT_DOUBLE_EQ(c.gamma, 0.05);
}

TEST(Config, PositionalScheme) {
  std::ostringstream sink;
  const auto raw = parse_arguments({"unprotected3q"}, sink);
  ASSERT_TRUE(raw);
  EXPECT_EQ(resolve_config(*raw).scheme, Scheme::Unprotected3q);
}

TEST(Config, Defaults) {
  const RunConfig d = resolve_config(json{{"scheme", "direct"}});
  EXPECT_DOUBLE_EQ(d.gamma, 0.05);
  EXPECT_DOUBLE_EQ(d.kappa, 1.0);
  EXPECT_DOUBLE_EQ(d.lambda, 2.5);
  EXPECT_DOUBLE_EQ(d.dt, 1e-3 / 2.5);
  EXPECT_EQ(d.grid_points, 200u);
  EXPECT_EQ(d.output, "cqec_direct");

  const RunConfig i = resolve_config(json{{"scheme", "indirect"}, {"kappa", 50.0}});
  EXPECT_DOUBLE_EQ(i.smoother_tc, 2.0 / 50.0);
  EXPECT_DOUBLE_EQ(i.lambda, 150.0);
  EXPECT_EQ(i.controller, FeedbackRule::Threshold);
  EXPECT_EQ(i.n_traj, 100u);

  // Every rate zero: dt falls back to a tenth of the grid spacing.
  const RunConfig z = resolve_config(json{{"scheme", "baseline1q"}, {"gamma", 0.0}});
  EXPECT_DOUBLE_EQ(z.dt, 2.0 / (10.0 * 199.0));
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(resolve_error(json::object()).field(), "scheme");
  EXPECT_EQ(resolve_error(json{{"scheme", "surface"}}).field(), "scheme");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"kapa", 1.0}}).field(), "kapa");
  EXPECT_EQ(resolve_error(json{{"scheme", "baseline1q"}, {"kappa", 1.0}}).field(), "kappa");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"n_traj", 5}}).field(), "n_traj");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"gamma", -1.0}}).field(), "gamma");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"gamma", "fast"}}).field(), "gamma");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"dt", 0.0}}).field(), "dt");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"t_max", 1.0}, {"dt", 0.1}}).field(), "dt");
  EXPECT_EQ(resolve_error(json{{"scheme", "indirect"}, {"dt", 0.01}}).field(), "dt");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"beta", 1.0}}).field(), "beta");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"grid_points", 1}}).field(),
            "grid_points");
  EXPECT_EQ(resolve_error(json{{"scheme", "indirect"}, {"n_traj", 0}}).field(), "n_traj");
  EXPECT_EQ(resolve_error(json{{"scheme", "indirect"}, {"n_traj", 2.5}}).field(), "n_traj");
  EXPECT_EQ(resolve_error(json{{"scheme", "indirect"}, {"controller", "pid"}}).field(),
            "controller");
  EXPECT_EQ(resolve_error(json{{"scheme", "indirect"}, {"kappa", 0.0}}).field(),
            "smoother_tc");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"lambda", 1.0}, {"lambda_ratio", 1.0}})
                .field(),
            "lambda_ratio");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"sweep", "kappa"}}).field(), "sweep");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"sweep", "seed=1,2"}}).field(), "sweep");
  EXPECT_EQ(resolve_error(json{{"scheme", "direct"}, {"sweep", "kappa=1,x"}}).field(), "kappa");
}

TEST(Config, AmplitudesNormalizedTogether) {
  const double h = std::sqrt(0.5);
  const RunConfig c = resolve_config(json{{"scheme", "direct"}, {"alpha", h}, {"beta", -h}});
  EXPECT_DOUBLE_EQ(c.alpha, h);
  EXPECT_DOUBLE_EQ(c.beta, -h);
}

TEST(Config, ToJsonRoundTrips) {
  const RunConfig c = resolve_config(
      json{{"scheme", "indirect"}, {"gamma", 0.3}, {"kappa", 70.0}, {"seed", 99},
           {"controller", "proportional"}, {"output", "x"}, {"threads", 3}});
  const json j = c.to_json();
  EXPECT_FALSE(j.contains("threads"));
  EXPECT_EQ(resolve_config(j).to_json(), j);
  EXPECT_EQ(j["controller"], "proportional");
  EXPECT_EQ(j["seed"], 99u);
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  const std::string cfg = path("c.json");
  std::ofstream(cfg) << R"({"scheme":"direct","kappa":3,"lambda":1,"t_max":4})";
  std::ostringstream sink;
  auto raw = parse_arguments({"--config", cfg, "--kappa", "5"}, sink);
  RunConfig c = resolve_config(*raw);
  EXPECT_DOUBLE_EQ(c.kappa, 5.0);
  EXPECT_DOUBLE_EQ(c.lambda, 1.0);
  EXPECT_DOUBLE_EQ(c.t_max, 4.0);
  // A ratio on the command line replaces an absolute lambda from the file.
  raw = parse_arguments({"--config", cfg, "--lambda-ratio", "2"}, sink);
  EXPECT_DOUBLE_EQ(resolve_config(*raw).lambda, 6.0);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("--lambda-ratio"), std::string::npos);
  EXPECT_EQ(run({"--version"}), 0);
  EXPECT_NE(out_.str().find(std::string(kVersion)), std::string::npos);

  EXPECT_EQ(run({}), 2);
  EXPECT_NE(err_.str().find("scheme"), std::string::npos);
  EXPECT_EQ(run({"--scheme", "direct", "--no-such-flag"}), 2);
  EXPECT_EQ(run({"--scheme", "baseline1q", "--seed", "3"}), 2);
  EXPECT_NE(err_.str().find("seed"), std::string::npos);
  EXPECT_EQ(run({"--config", path("missing.json")}), 2);

  EXPECT_EQ(run({"baseline1q", "-q", "-o", path("no/such/dir/x")}), 1);

  EXPECT_EQ(run({"indirect", "-q", "--gamma", "1e12", "--n-traj", "1", "--t-max", "0.001",
                 "--dt", "1e-5", "--grid-points", "11", "-o", path("blowup")}),
            3);
  EXPECT_NE(err_.str().find("seed"), std::string::npos);
}

TEST_F(CliTest, BaselineCsvMatchesClosedForm) {
  const std::string out = path("b");
  ASSERT_EQ(run({"baseline1q", "-q", "--gamma", "1.3", "--t-max", "1.5", "-o", out}), 0);
  std::istringstream csv(slurp(out + ".csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,fidelity_mean,fidelity_stderr");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    double t, f, se;
    char c1, c2;
    std::istringstream row(line);
    row >> t >> c1 >> f >> c2 >> se;
    ASSERT_TRUE(row && c1 == ',' && c2 == ',') << line;
    EXPECT_NEAR(f, 0.5 * (1.0 + std::exp(-2.0 * 1.3 * t)), 1e-6);
    EXPECT_EQ(se, 0.0);
    ++rows;
  }
  EXPECT_EQ(rows, 200u);
}

TEST_F(CliTest, CsvFormat) {
  FidelityCurve c;
  c.times = {0.0, 0.5};
  c.mean = {1.0, 0.1};
  c.std_error = {0.0, 1.0 / 3.0};
  EXPECT_EQ(format_csv(c),
            "t,fidelity_mean,fidelity_stderr\n"
            "0.0000000000000000e+00,1.0000000000000000e+00,0.0000000000000000e+00\n"
            "5.0000000000000000e-01,1.0000000000000001e-01,3.3333333333333331e-01\n");
}

TEST_F(CliTest, RepeatRunsAreByteIdentical) {
  const std::vector<std::string> common{"indirect", "-q", "--n-traj", "6", "--t-max", "0.02",
                                        "--seed", "11", "--grid-points", "21"};
  auto args = common;
  args.insert(args.end(), {"--threads", "1", "-o", path("a")});
  ASSERT_EQ(run(args), 0);
  args = common;
  args.insert(args.end(), {"--threads", "3", "-o", path("b")});
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, MetadataReproducesRun) {
  ASSERT_EQ(run({"indirect", "-q", "--n-traj", "4", "--t-max", "0.02", "--controller",
                 "proportional", "-o", path("m")}),
            0);
  const std::string first = slurp(path("m.csv"));
  const json meta = json::parse(slurp(path("m.json")));
  EXPECT_EQ(meta["config"]["scheme"], "indirect");
  EXPECT_EQ(meta["config"]["controller"], "proportional");
  EXPECT_EQ(meta["engine"]["integrator"], "euler-maruyama");
  EXPECT_EQ(meta["run"]["trajectories"], 4u);
  EXPECT_TRUE(meta["run"].contains("wall_clock_seconds"));
  fs::remove(path("m.csv"));
  ASSERT_EQ(run({"--config", path("m.json"), "-q"}), 0);
  EXPECT_EQ(slurp(path("m.csv")), first);
}

TEST_F(CliTest, ProgressGoesToStderrUnlessQuiet) {
  ASSERT_EQ(run({"indirect", "--n-traj", "10", "--t-max", "0.01", "--threads", "1", "-o",
                 path("p")}),
            0);
  EXPECT_NE(err_.str().find("100% (10/10"), std::string::npos);
  EXPECT_NE(err_.str().find("10% (1/10"), std::string::npos);
  ASSERT_EQ(run({"indirect", "-q", "--n-traj", "10", "--t-max", "0.01", "-o", path("p")}), 0);
  EXPECT_TRUE(err_.str().empty());
  EXPECT_TRUE(out_.str().empty());
}

TEST_F(CliTest, SweepWritesOneFileSetPerValue) {
  ASSERT_EQ(run({"direct", "-q", "--t-max", "2", "--sweep", "kappa=1,2.5", "-o", path("s")}),
            0);
  for (const char* v : {"1", "2.5"}) {
    const std::string stem = path(std::string("s_kappa_") + v);
    ASSERT_TRUE(fs::exists(stem + ".csv")) << stem;
    const json meta = json::parse(slurp(stem + ".json"));
    EXPECT_DOUBLE_EQ(meta["config"]["kappa"].get<double>(), std::stod(v));
    // lambda follows kappa through the default ratio.
    EXPECT_DOUBLE_EQ(meta["config"]["lambda"].get<double>(), 2.5 * std::stod(v));
  }
  const std::string gp = slurp(path("s_sweep.gp"));
  EXPECT_NE(gp.find("s_kappa_1.csv"), std::string::npos);
  EXPECT_NE(gp.find("s_kappa_2.5.csv"), std::string::npos);
  EXPECT_NE(gp.find("exp(-2.0 * g * x)"), std::string::npos);
}

TEST(PlotScript, QuotesAndBaselines) {
  const std::string s =
      plot_script("o'k.png", {"a.csv", "b.csv"}, {"A", "B"}, {0.5, 0.5}, 3.0);
  EXPECT_NE(s.find("set output 'o''k.png'"), std::string::npos);
  EXPECT_NE(s.find("set datafile separator ','"), std::string::npos);
  EXPECT_NE(s.find("set xrange [0:3]"), std::string::npos);
  std::size_t n = 0;
  for (auto p = s.find("baseline(x, 0.5)"); p != std::string::npos;
       p = s.find("baseline(x, 0.5)", p + 1)) {
    ++n;
  }
  EXPECT_EQ(n, 1u);
}

}  // namespace
}  // namespace cqec::cli
