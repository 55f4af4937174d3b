#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "geodisc/app/commands.hpp"
#include "geodisc/app/io.hpp"
#include "geodisc/integrator.hpp"
#include "geodisc/lifts.hpp"
#include "test_util.hpp"

namespace geodisc::app {
namespace {

namespace fs = std::filesystem;
using testing::vec;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "geodisc");
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

// One line, terminated by a newline, with the machine-parsable prefix.
void expect_error_line(const CliRun& r, int code) {
  EXPECT_EQ(r.code, code) << r.err;
  EXPECT_EQ(r.err.rfind("geodisc: error[", 0), 0u) << r.err;
  EXPECT_EQ(count(r.err, "\n"), 1u) << r.err;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("geodisc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kSe2Init = "-3,1.5,0,1.5,0,0.5,0,0,0,0,-0.1,0";

TEST_F(Cli, SimulateSe2WritesAllRows) {
  const CliRun r = run({"simulate", "--problem", "se2", "--h", "0.01", "--steps", "400", "--tau", "1e-20",
                     "--r", "1", "--init", kSe2Init, "--csv", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable t = read_csv(path("t.csv"));
  EXPECT_EQ(t.rows, 401u);
  EXPECT_EQ(t.header.size(), 1u + 5 * 3 + 2);
  EXPECT_EQ(slurp(path("t.csv")).substr(0, slurp(path("t.csv")).find('\n')),
            "t,q0,q1,q2,qdot0,qdot1,qdot2,p0_0,p0_1,p0_2,p1_0,p1_1,p1_2,u0,u1,u2,H,clearance");
  for (double c : t.column("clearance")) EXPECT_GT(c, 0.0);
}

TEST_F(Cli, SimulateOneFreeStepMatchesTheLibrary) {
  const CliRun r = run({"simulate", "--problem", "free", "--n", "1", "--h", "0.1", "--steps", "1", "--init",
                     "0,1,2,3", "--csv", path("f.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable t = read_csv(path("f.csv"));
  ASSERT_EQ(t.rows, 2u);
  const Vector z1 = symplectic_step(lifted_cotangent_map(midpoint_map(1)),
                                    second_order_hamiltonian(1, Potential::zero(1)), 0.1, vec({0, 1, 2, 3}));
  EXPECT_EQ(t.column("q0")[1], z1[0]);
  EXPECT_EQ(t.column("qdot0")[1], z1[1]);
  EXPECT_EQ(t.column("p0_0")[1], z1[2]);
  EXPECT_EQ(t.column("p1_0")[1], z1[3]);
  EXPECT_TRUE(std::isnan(t.column("clearance")[0]));
}

TEST_F(Cli, SimulateWithoutInitIsAConfigError) {
  expect_error_line(run({"simulate", "--problem", "se2", "--csv", path("x.csv")}), 2);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, InitAndBoundaryTogetherAreRejected) {
  expect_error_line(run({"simulate", "--problem", "free", "--n", "1", "--init", "0,0,0,0", "--boundary",
                         "0,0,1,0", "--csv", path("x.csv")}),
                    2);
}

TEST_F(Cli, WrongInitLengthIsRejected) {
  expect_error_line(run({"simulate", "--problem", "se2", "--init", "1,2,3", "--csv", path("x.csv")}), 2);
}

TEST_F(Cli, StartInsideObstacleExitsTwo) {
  expect_error_line(run({"simulate", "--problem", "se2", "--init", "0.5,0,0,0,0,0,0,0,0,0,0,0", "--csv",
                         path("x.csv")}),
                    2);
}

TEST_F(Cli, CollisionExitsOne) {
  const CliRun r = run({"simulate", "--problem", "se2", "--init", "-3,0,0,2,0,0,0,0,0,0,0,0", "--csv", path("x.csv")});
  expect_error_line(r, 1);
  EXPECT_NE(r.err.find("SingularPotential"), std::string::npos);
}

TEST_F(Cli, ShootFreeSpline) {
  const CliRun r = run({"shoot", "--problem", "free", "--n", "1", "--T", "1", "--h", "0.01", "--boundary", "0,0,1,0",
                     "--csv", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::size_t pos = r.out.find("\nJ ");
  ASSERT_NE(pos, std::string::npos) << r.out;
  EXPECT_NEAR(std::stod(r.out.substr(pos + 3)), 6.0, 0.06);
  EXPECT_EQ(read_csv(path("s.csv")).rows, 101u);
}

TEST_F(Cli, ShootAtRestCostsNothing) {
  const CliRun r = run({"shoot", "--problem", "free", "--n", "1", "--T", "1", "--h", "0.1", "--boundary", "0.5,0,0.5,0",
                     "--csv", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\nJ 0\n"), std::string::npos) << r.out;
}

TEST_F(Cli, ShootWithZeroToleranceExitsOne) {
  const CliRun r = run({"shoot", "--problem", "free", "--n", "1", "--T", "1", "--h", "0.05", "--boundary", "0,0,1,0",
                     "--tol", "0", "--csv", path("s.csv")});
  expect_error_line(r, 1);
  EXPECT_NE(r.err.find("error[NonConvergence]"), std::string::npos);
  EXPECT_NE(r.err.find("defect"), std::string::npos);
}

TEST_F(Cli, ShootWithUnalignedHorizonExitsTwo) {
  expect_error_line(run({"shoot", "--problem", "free", "--n", "1", "--T", "1", "--h", "0.03", "--boundary",
                         "0,0,1,0", "--csv", path("s.csv")}),
                    2);
}

TEST_F(Cli, CsvIsBitStable) {
  for (const char* name : {"a.csv", "b.csv"}) {
    ASSERT_EQ(run({"simulate", "--problem", "se2", "--steps", "50", "--init", kSe2Init, "--csv", path(name)}).code, 0);
  }
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, ConfigFileWithFlagOverrides) {
  std::ofstream(path("c.json")) << R"({"problem": "se2", "h": 0.01, "steps": 20, "init": [-3, 1.5, 0, 1.5, 0, 0.5, 0, 0, 0, 0, -0.1, 0]})";
  ASSERT_EQ(run({"simulate", "--config", path("c.json"), "--steps", "7", "--csv", path("c.csv")}).code, 0);
  EXPECT_EQ(read_csv(path("c.csv")).rows, 8u);
}

TEST_F(Cli, UnknownConfigKeyIsRejected) {
  std::ofstream(path("c.json")) << R"({"problem": "se2", "stepz": 3})";
  expect_error_line(run({"simulate", "--config", path("c.json")}), 2);
}

TEST_F(Cli, MalformedConfigIsRejected) {
  std::ofstream(path("c.json")) << "{ not json";
  expect_error_line(run({"simulate", "--config", path("c.json")}), 2);
  expect_error_line(run({"simulate", "--config", path("missing.json")}), 2);
}

TEST_F(Cli, UsageErrors) {
  expect_error_line(run({"bogus"}), 2);
  expect_error_line(run({}), 2);
  expect_error_line(run({"simulate", "--h", "abc"}), 2);
}

TEST_F(Cli, CheckSphereLiftReportsPrintedFormulaAsInformation) {
  const CliRun r = run({"check", "--suite", "sphere-lift"});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json report = nlohmann::json::parse(r.out);
  EXPECT_TRUE(report["passed"].get<bool>());
  bool has_info = false;
  for (const auto& e : report["results"]) {
    EXPECT_EQ(e["suite"], "sphere-lift");
    if (e["status"] == "info") has_info = true;
    for (const char* key : {"suite", "case", "status", "defect", "tolerance"}) EXPECT_TRUE(e.contains(key));
  }
  EXPECT_TRUE(has_info);
}

TEST_F(Cli, CheckConvergenceReportsOrderTwo) {
  const CliRun r = run({"check", "--suite", "convergence", "--h", "0.04,0.02,0.01", "--json", path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json report = nlohmann::json::parse(slurp(path("r.json")));
  bool found = false;
  for (const auto& e : report["results"]) {
    if (e["detail"].get<std::string>().find("order") != std::string::npos) found = true;
  }
  EXPECT_TRUE(found) << r.out;
}

TEST_F(Cli, SeedFromEnvironmentOverridesConfig) {
  ::setenv("GEODISC_SEED", "77", 1);
  const CliRun r = run({"check", "--suite", "example3", "--seed", "5"});
  ::unsetenv("GEODISC_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["seed"].get<int>(), 77);
}

TEST_F(Cli, UnknownSuiteIsAConfigError) {
  expect_error_line(run({"check", "--suite", "nope"}), 2);
}

TEST_F(Cli, PlotSe2Run) {
  ASSERT_EQ(run({"simulate", "--problem", "se2", "--steps", "400", "--init", kSe2Init, "--csv", path("t.csv")}).code, 0);
  const CliRun r = run({"plot", path("t.csv"), path("t.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = slurp(path("t.svg"));
  EXPECT_EQ(count(svg, "<circle"), 1u);
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  const std::size_t start = svg.find("points=\"") + 8;
  const std::string points = svg.substr(start, svg.find('"', start) - start);
  EXPECT_EQ(count(points, " ") + 1, 401u);
}

TEST_F(Cli, PlotTwoPointCsv) {
  std::ofstream(path("two.csv")) << "t,q0,q1\n0,0,0\n1,1,1\n";
  const CliRun r = run({"plot", path("two.csv"), path("two.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = slurp(path("two.svg"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "<circle"), 0u);
}

TEST_F(Cli, PlotSinglePointIsStillValid) {
  std::ofstream(path("one.csv")) << "q0,q1\n2,2\n";
  ASSERT_EQ(run({"plot", path("one.csv"), path("one.svg")}).code, 0);
  EXPECT_NE(slurp(path("one.svg")).find("</svg>"), std::string::npos);
}

TEST_F(Cli, PlotMissingColumnExitsTwo) {
  std::ofstream(path("bad.csv")) << "t,q0\n0,1\n";
  expect_error_line(run({"plot", path("bad.csv"), path("bad.svg")}), 2);
  expect_error_line(run({"plot", path("nothere.csv"), path("bad.svg")}), 2);
  std::ofstream(path("junk.csv")) << "q0,q1\n1,abc\n";
  expect_error_line(run({"plot", path("junk.csv"), path("bad.svg")}), 2);
}

}  // namespace
}  // namespace geodisc::app
