#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qzak/cli.hpp"

using namespace qzak;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "qzak");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::path(testing::TempDir()) / ("qzak_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

const char* kSmall = R"({
  "grid": {"points": 256, "length": 40},
  "final_time": 0.05, "sample_count": 4, "lambdas": [4, 8, 16],
  "dts": [0.01, 0.005, 0.0025, 0.00125], "record_walltime": false
})";

const char* kOracle = R"({
  "grid": {"points": 32, "length": 16},
  "lambda": 4, "final_time": 0.1, "dt0": 0.05, "c_lambda": 1.0,
  "data": {"width": 1.5, "density_width": 1.5, "density_center": 1.0, "velocity_width": 1.5,
           "min_points_per_width": 3, "edge_tolerance": 1e-9},
  "oracle": {"tolerance": 1e-12}
})";

}  // namespace

TEST(Cli, Version) {
  const Outcome r = run({"version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("qzak ", 0), 0u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitConfig);
  EXPECT_EQ(run({"dance"}).code, kExitConfig);
  EXPECT_EQ(run({"sweep"}).code, kExitConfig);  // --config is required
}

TEST(Cli, MissingConfigFile) {
  const fs::path dir = fresh_dir("missing");
  const Outcome r = run({"sweep", "--config", (dir / "nope.json").string(), "--out", (dir / "o").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("nope.json"), std::string::npos) << r.err;
  EXPECT_NE(slurp(dir / "o" / "error.txt").find("nope.json"), std::string::npos);
}

TEST(Cli, BadConfigValue) {
  const fs::path dir = fresh_dir("badvalue");
  const fs::path cfg = write_config(dir, kSmall);
  const Outcome r = run({"simulate", "--config", cfg.string(), "--out", (dir / "o").string(), "--override",
                     "epsilon=2"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("epsilon"), std::string::npos);
}

TEST(Cli, SweepWritesFilesDeterministically) {
  const fs::path dir = fresh_dir("sweep");
  const fs::path cfg = write_config(dir, kSmall);
  const Outcome a = run({"sweep", "--config", cfg.string(), "--out", (dir / "a").string(), "--quiet"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_TRUE(a.out.empty());
  const Outcome b = run({"sweep", "--config", cfg.string(), "--out", (dir / "b").string()});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(b.out.find("slope_E="), std::string::npos);
  for (const char* f : {"sweep.csv", "ratefit.json", "plots.gp", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;
  }
  const std::string csv = slurp(dir / "a" / "sweep.csv");
  EXPECT_EQ(csv, slurp(dir / "b" / "sweep.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const auto fit = nlohmann::json::parse(slurp(dir / "a" / "ratefit.json"));
  EXPECT_LT(fit["slope"].get<double>(), 0.0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
  EXPECT_EQ(manifest["config"]["experiment"], "sweep");
}

TEST(Cli, SimulateWritesTrajectory) {
  const fs::path dir = fresh_dir("simulate");
  const fs::path cfg = write_config(dir, kSmall);
  const Outcome r = run({"simulate", "--config", cfg.string(), "--out", (dir / "o").string(), "--override", "lambda=8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "o" / "diagnostics.csv"));
  EXPECT_EQ(fs::file_size(dir / "o" / "trajectory.bin"), 4u * 256u * 4u * 8u);
}

TEST(Cli, SelfConvergeAndLayerDecay) {
  const fs::path dir = fresh_dir("misc");
  const fs::path cfg = write_config(dir, kSmall);
  const Outcome s = run({"self-converge", "--config", cfg.string(), "--out", (dir / "s").string()});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  const auto conv = nlohmann::json::parse(slurp(dir / "s" / "convergence.json"));
  EXPECT_NEAR(conv["order"].get<double>(), 2.0, 0.2);
  const Outcome l = run({"layer-decay", "--config", cfg.string(), "--out", (dir / "l").string(), "--override",
                     "grid.points=1024", "grid.length=125.66370614359172"});
  ASSERT_EQ(l.code, kExitOk) << l.err;
  EXPECT_TRUE(fs::exists(dir / "l" / "decay.csv"));
}

TEST(Cli, OracleCheckFailsOnCoarseStep) {
  const fs::path dir = fresh_dir("oracle");
  const fs::path cfg = write_config(dir, kOracle);
  const Outcome r = run({"oracle-check", "--config", cfg.string(), "--out", (dir / "o").string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_TRUE(fs::exists(dir / "o" / "oracle.json"));
  EXPECT_FALSE(slurp(dir / "o" / "error.txt").empty());
  const Outcome ok = run({"oracle-check", "--config", cfg.string(), "--out", (dir / "p").string(), "--override",
                      "dt0=0.0001", "oracle.tolerance=1e-5"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
}
