#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "s2kit/commands.hpp"

using namespace s2kit;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "s2kit");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("s2kit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, IneqPositive) {
  EXPECT_EQ(run({"ineq", "--dims", "2..8", "--count", "2000", "--sign", "positive", "--seed", "42", "--out", out("a")}),
            kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "a" / "ineq_summary.json"));
  EXPECT_TRUE(j.contains("dims"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "ineq_records.csv"));
}

TEST_F(Cli, IneqReportsAreReproducible) {
  std::string summary, records;
  for (int pass = 0; pass < 2; ++pass) {
    ASSERT_EQ(run({"ineq", "--dims", "3,5", "--count", "500", "--sign", "indefinite", "--seed", "7", "--out", out("a")}),
              kExitOk);
    if (pass == 0) {
      summary = slurp(dir_ / "a" / "ineq_summary.json");
      records = slurp(dir_ / "a" / "ineq_records.csv");
    }
  }
  EXPECT_EQ(slurp(dir_ / "a" / "ineq_summary.json"), summary);
  EXPECT_EQ(slurp(dir_ / "a" / "ineq_records.csv"), records);
}

TEST_F(Cli, SolveRadial) {
  ASSERT_EQ(run({"solve", "--radial", "--dim", "3", "--f", "const:1", "--out", out("s")}), kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "s" / "summary.json"));
  EXPECT_NEAR(j["summary"]["u_min"].get<double>(), -0.288675134594813, 1e-6);
  EXPECT_TRUE(fs::exists(dir_ / "s" / "solution.txt"));
}

TEST_F(Cli, SolveGridAndReuseSolution) {
  ASSERT_EQ(run({"solve", "--grid2d", "--domain", "disk:1", "--f", "const:1", "--h", "0.03125", "--out", out("g")}),
            kExitOk);
  const std::string sol = (dir_ / "g" / "solution.txt").string();
  ASSERT_TRUE(fs::exists(sol));
  EXPECT_EQ(run({"verify", "--grid2d", "--domain", "disk:1", "--app", "1", "--alpha", "1", "--solution", sol, "--out",
                 out("v")}),
            kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "v" / "verify.json"));
  EXPECT_TRUE(fs::exists(dir_ / "v" / "verify.csv"));
  EXPECT_FALSE(j.dump().empty());
}

TEST_F(Cli, SolveEigen) {
  ASSERT_EQ(run({"solve", "--eigen", "--dim", "3", "--out", out("e")}), kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "e" / "summary.json"));
  EXPECT_LE(j["eigen"]["residual"].get<double>(), 1e-6);
}

TEST_F(Cli, VerifyRadialApplicationOne) {
  ASSERT_EQ(run({"verify", "--app", "1", "--radial", "--dim", "3", "--alpha", "1", "--out", out("v")}), kExitOk);
  const std::string csv = slurp(dir_ / "v" / "verify.csv");
  EXPECT_EQ(csv.rfind("case,domain,source,alpha,gamma,mode,margin,tol_margin,slack,holds,note", 0), 0u);
  EXPECT_NE(csv.find("0.24401693"), std::string::npos);
}

TEST_F(Cli, VerifyReportsAreReproducible) {
  std::string csv, js;
  for (int pass = 0; pass < 2; ++pass) {
    ASSERT_EQ(run({"verify", "--radial", "--dim", "3", "--f", "expdec:1", "--alpha", "1,1.5,2", "--nodes", "256",
                   "--out", out("a")}),
              kExitOk);
    if (pass == 0) {
      csv = slurp(dir_ / "a" / "verify.csv");
      js = slurp(dir_ / "a" / "verify.json");
    }
  }
  EXPECT_EQ(slurp(dir_ / "a" / "verify.csv"), csv);
  EXPECT_EQ(slurp(dir_ / "a" / "verify.json"), js);
}

TEST_F(Cli, VerifyPowerAboveTwoIsHypothesisFailure) {
  EXPECT_EQ(run({"verify", "--app", "3", "--p", "2.5", "--radial", "--dim", "3", "--out", out("p")}), kExitHypothesis);
}

TEST_F(Cli, BadInputExitCodes) {
  EXPECT_EQ(run({"solve", "--radial", "--grid2d", "--out", out("x")}), kExitFailure);
  EXPECT_EQ(run({"solve", "--radial", "--f", "cubic:1", "--out", out("x")}), kExitFailure);
  EXPECT_EQ(run({"ineq", "--sign", "sideways", "--out", out("x")}), kExitFailure);
  EXPECT_EQ(run({"frobnicate"}), kExitFailure);
  EXPECT_EQ(run({"solve", "--grid2d", "--domain", "disk:1", "--f", "eigen:1", "--h", "0.03125", "--out", out("x")}),
            kExitSolver);
}

TEST_F(Cli, SeedOnlyChangesWhatItShould) {
  ASSERT_EQ(run({"ineq", "--dims", "4", "--count", "50", "--seed", "1", "--out", out("a")}), kExitOk);
  ASSERT_EQ(run({"ineq", "--dims", "4", "--count", "50", "--seed", "2", "--out", out("b")}), kExitOk);
  EXPECT_NE(slurp(dir_ / "a" / "ineq_records.csv"), slurp(dir_ / "b" / "ineq_records.csv"));
}

TEST_F(Cli, ConfigFileMatchesFlags) {
  const fs::path cfg = dir_ / "run.cfg";
  {
    std::ofstream o(cfg);
    o << "mode = radial\ndim = 4\nsource = expdec:1\nradial_nodes = 256\nout = " << out("c") << "\n";
  }
  ASSERT_EQ(run({"solve", "--config", cfg.string()}), kExitOk);
  ASSERT_EQ(run({"solve", "--radial", "--dim", "4", "--f", "expdec:1", "--nodes", "256", "--out", out("f")}), kExitOk);
  EXPECT_EQ(slurp(dir_ / "c" / "solution.txt"), slurp(dir_ / "f" / "solution.txt"));
}

TEST_F(Cli, IdentityScan) {
  ASSERT_EQ(run({"identity-scan", "--count", "200", "--seed", "3", "--out", out("i")}), kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "i" / "identity_scan.json"));
  EXPECT_NEAR(j["h2_fit"]["exponent_k"].get<double>(), 1.0, 1e-8);
}
