#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "radeig_cli/run.hpp"

namespace radeig::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radeig_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& text) {
    const fs::path p = dir_ / "config.json";
    std::ofstream(p) << text;
    return p;
  }

  int invoke(const std::string& command, const fs::path& config, const fs::path& out,
             std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"radeig", command, "--config", config.string(), "--out-dir", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, EigenExample) {
  const auto cfg = write_config(R"({"operator": {"kind": "laplacian"},
    "coefficients": {"c": "const:-1"}, "grid": {"R": 1, "N": 2, "n": 401},
    "solver": {"bracket_width": 1e-3}})");
  ASSERT_EQ(invoke("eigen", cfg, dir_ / "out"), kExitOk);
  const Json j = Json::parse(slurp(dir_ / "out" / "eigen.json"));
  EXPECT_NEAR(j["positive"]["lambda_lo"].get<double>(), 0.999, 1.5e-3);
  EXPECT_NEAR(j["positive"]["lambda_hi"].get<double>(), 1.001, 1.5e-3);
  EXPECT_LE(j["positive"]["lambda_lo"].get<double>(), 1.0);
  EXPECT_GE(j["positive"]["lambda_hi"].get<double>(), 1.0);
  EXPECT_EQ(j["config"]["grid"]["n"], 401);
  EXPECT_EQ(j["config"]["command"], "eigen");
  const std::string csv = slurp(dir_ / "out" / "eigenfunction.csv");
  EXPECT_EQ(csv.rfind("r,u\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 402);
}

TEST_F(CliTest, CertifyAboveBoundRejects) {
  const auto cfg = write_config(R"({"operator": {"kind": "pucci_minus", "a": 1, "A": 2},
    "grid": {"n": 2001}, "certify": {"beta2": 10}})");
  ASSERT_EQ(invoke("certify", cfg, dir_ / "out"), kExitFailed);
  const Json j = Json::parse(slurp(dir_ / "out" / "certificate.json"));
  EXPECT_EQ(j["certificate"]["verdict"], "reject");
  EXPECT_FALSE(j["certificate"]["reasons"].empty());
  EXPECT_TRUE(j["certificate"]["m1"].is_null());
}

TEST_F(CliTest, CertifyAcceptsWithEigenCrossCheck) {
  const auto cfg = write_config(R"({"operator": {"kind": "pucci_minus", "a": 1, "A": 2},
    "grid": {"n": 2001}, "certify": {"beta2_fraction": 0.5, "lambda_up": true}})");
  ASSERT_EQ(invoke("certify", cfg, dir_ / "out"), kExitOk);
  const Json j = Json::parse(slurp(dir_ / "out" / "certificate.json"));
  EXPECT_EQ(j["certificate"]["verdict"], "accept");
  EXPECT_GE(j["lambda_up"]["lambda_lo"].get<double>(),
            j["certificate"]["lambda_lower_bound"].get<double>());
  EXPECT_TRUE(fs::exists(dir_ / "out" / "supersolution.csv"));
}

TEST_F(CliTest, InvalidGridExitsThreeWithoutOutputs) {
  const auto cfg = write_config(R"({"grid": {"n": 2}})");
  testing::internal::CaptureStderr();
  EXPECT_EQ(invoke("eigen", cfg, dir_ / "out"), kExitInvalid);
  const std::string err = testing::internal::GetCapturedStderr();
  EXPECT_NE(err.find("grid: n must be ≥ 3"), std::string::npos) << err;
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, ConfigValidation) {
  EXPECT_THROW(parse_config(Json::parse(R"({"grid": {"n": 2.5}})")), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"gird": {}})")), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"operator": {"kind": "heat"}})")), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"command": "solve"})"), Command::eigen), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"solver": {"tol": 0}})")), ConfigError);
  EXPECT_THROW(parse_config(Json::parse(R"({"command": "sweep"})")), ConfigError);
  const RunConfig c = parse_config(Json::parse(R"({"coefficients": {"c": -2}})"));
  EXPECT_EQ(c.c, "const:-2");
}

TEST_F(CliTest, ResolvedConfigRoundTrips) {
  const RunConfig c = parse_config(Json::parse(R"({"command": "sweep", "seed": 9,
    "operator": {"kind": "p_laplacian", "p": 3}, "solver": {"bracket_width": 1e-4},
    "sweep": {"base": "eigen", "vary": {"grid.n": [101, 201]}, "workers": 2}})"));
  const Json j = to_json(c);
  EXPECT_EQ(to_json(parse_config(j)).dump(), j.dump());
}

TEST_F(CliTest, ProfileSpecs) {
  RunConfig c;
  const RadialGrid g(1.0, 2, 11);
  EXPECT_EQ(build_profile("const:2.5", c)(0.3), 2.5);
  EXPECT_DOUBLE_EQ(build_profile("poly:1,2,3", c)(0.5), 1.0 + 1.0 + 0.75);
  EXPECT_THROW(build_profile("poly:1,x", c), ConfigError);
  EXPECT_THROW(build_profile("cosine:1", c), ConfigError);
  c.op.A = 2.0;
  const auto band = build_profile("band:", c);
  EXPECT_GT(band(0.0), 0.0);
  EXPECT_DOUBLE_EQ(band(0.5), -c.certify.beta1);
  std::ofstream(dir_ / "t.csv") << "r,c\n0,1\n1,3\n";
  c.base_dir = dir_;
  EXPECT_DOUBLE_EQ(build_profile("table:t.csv", c)(0.5), 2.0);
  EXPECT_THROW(build_profile("table:missing.csv", c), std::invalid_argument);
}

TEST_F(CliTest, SolveAndCheckOperator) {
  const auto cfg = write_config(R"({"operator": {"kind": "p_laplacian", "p": 3},
    "coefficients": {"c": "const:-1", "g": "poly:0,0,-1"}, "grid": {"n": 101}})");
  ASSERT_EQ(invoke("solve", cfg, dir_ / "s"), kExitOk);
  const Json j = Json::parse(slurp(dir_ / "s" / "report.json"));
  EXPECT_EQ(j["method"], "neumann");
  EXPECT_TRUE(j["report"]["converged"].get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "s" / "solution.csv"));

  const auto chk = write_config(R"({"operator": {"kind": "pucci_plus", "a": 1, "A": 3, "alpha": 0.5},
    "check": {"samples": 500}})");
  ASSERT_EQ(invoke("check-operator", chk, dir_ / "c", {"--seed", "5"}), kExitOk);
  const Json p = Json::parse(slurp(dir_ / "c" / "properties.json"));
  EXPECT_EQ(p["config"]["seed"], 5);
  EXPECT_EQ(p["reports"].size(), 2u);
  EXPECT_TRUE(p["reports"][0]["passed"].get<bool>());
  EXPECT_TRUE(p["reports"][1]["passed"].get<bool>());
}

TEST_F(CliTest, SolveAboveThresholdExitsThree) {
  // c + lambda >= 0 everywhere forces the general solver, whose precondition
  // (lambda below both eigenvalues) fails.
  const auto cfg = write_config(R"({"operator": {"kind": "laplacian"}, "lambda": 2,
    "coefficients": {"c": "const:-1", "g": "const:-1"}, "grid": {"n": 51}})");
  testing::internal::CaptureStderr();
  EXPECT_EQ(invoke("solve", cfg, dir_ / "out"), kExitInvalid);
  testing::internal::GetCapturedStderr();
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, SweepRowsInTupleOrderAndReproducible) {
  const auto cfg = write_config(R"({"operator": {"kind": "pucci_minus", "a": 1, "A": 2},
    "grid": {"n": 2001},
    "sweep": {"base": "certify", "workers": 3,
              "vary": {"certify.beta2_fraction": [0.25, 0.5, 0.75, 1.5], "certify.k": [4, 5]}}})");
  testing::internal::CaptureStderr();
  EXPECT_EQ(invoke("sweep", cfg, dir_ / "a"), kExitFailed);  // 1.5 x bound rejects
  EXPECT_EQ(invoke("sweep", cfg, dir_ / "b"), kExitFailed);
  testing::internal::GetCapturedStderr();
  const std::string a = slurp(dir_ / "a" / "sweep.csv");
  EXPECT_EQ(a, slurp(dir_ / "b" / "sweep.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "sweep.json"), slurp(dir_ / "b" / "sweep.json"));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("certify.beta2_fraction,certify.k,verdict", 0), 0u) << line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].rfind("0.25,4,accept", 0), 0u) << rows[0];
  EXPECT_EQ(rows[1].rfind("0.25,5,", 0), 0u) << rows[1];
  EXPECT_NE(rows[6].find("reject"), std::string::npos) << rows[6];
}

TEST_F(CliTest, SweepRejectsInvalidTuple) {
  const auto cfg = write_config(R"({"sweep": {"base": "eigen", "vary": {"grid.n": [51, 2]}}})");
  testing::internal::CaptureStderr();
  EXPECT_EQ(invoke("sweep", cfg, dir_ / "out"), kExitInvalid);
  const std::string err = testing::internal::GetCapturedStderr();
  EXPECT_NE(err.find("sweep tuple 1"), std::string::npos) << err;
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, UsageErrors) {
  testing::internal::CaptureStderr();
  testing::internal::CaptureStdout();
  EXPECT_EQ(invoke("frobnicate", write_config("{}"), dir_ / "out"), kExitInvalid);
  std::vector<std::string> args{"radeig", "eigen"};
  std::vector<char*> argv;
  for (auto& s : args) argv.push_back(s.data());
  EXPECT_EQ(main_entry(2, argv.data()), kExitInvalid);
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
}

}  // namespace
}  // namespace radeig::cli
