#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"
#include "sixv/driver.hpp"

using namespace sixv;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(SIXV_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kParams = "--lambda 0.21,0.47,0.83 --nu 0.34,0.62,0.91";

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.5"), cplx(0.5));
  EXPECT_EQ(parse_complex("0.5:-0.25"), cplx(0.5, -0.25));
  EXPECT_THROW(parse_complex("abc"), ConfigError);
  EXPECT_THROW(parse_complex("1:2:3"), ConfigError);
}

TEST(RunConfig, TypeIOrderingIsAConfigError) {
  RunConfig cfg;
  cfg.mode = Mode::typeI;
  cfg.n = 2;
  cfg.params.lambdas = {cplx(0.2), cplx(0.4)};
  cfg.params.nus = {cplx(0.3), cplx(0.6)};
  cfg.M = 2;
  cfg.L = 1;
  EXPECT_THROW(run(cfg), ConfigError);
}

TEST(Cli, PartitionBothHasSmallResidual) {
  const auto r = cli("--mode partition --n 2 --lambda 0.21,0.47 --nu 0.34,0.62 --method both");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  for (const char* key : {"mode", "N", "params", "M", "L", "value", "method", "residual", "elapsed_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.size(), 9u);
  EXPECT_EQ(j["mode"], "partition");
  EXPECT_EQ(j["N"], 2);
  EXPECT_TRUE(j["M"].is_null());
  EXPECT_LT(j["residual"].get<double>(), 1e-9);
  EXPECT_NEAR(j["value"][0].get<double>(), -1329.8059163796638, 1e-8);
  for (const char* key : {"lambda", "nu", "eta", "zeta_plus"}) EXPECT_TRUE(j["params"].contains(key)) << key;
  EXPECT_EQ(j["params"]["lambda"].size(), 2u);
  EXPECT_EQ(j["params"]["eta"], json::array({0.5, 0.0}));
}

TEST(Cli, TypeIFormulaValue) {
  const auto r = cli(std::string("--mode typeI --m 1 --l 3 ") + kParams);
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["value"][0].get<double>(), -0.31753726828848944, 1e-11);
  EXPECT_TRUE(j["residual"].is_null());
  EXPECT_EQ(j["method"], "formula");
}

TEST(Cli, TypeIOrderingExitCode) {
  EXPECT_EQ(cli(std::string("--mode typeI --m 2 --l 1 ") + kParams).code, 2);
}

TEST(Cli, BadFlagsExitCode) {
  EXPECT_EQ(cli("--mode nonsense --n 2 --lambda-base 0.2 --dz 0.1 --nu-base 0.3 --dw 0.1").code, 2);
  EXPECT_EQ(cli("--mode partition --lambda 0.1,0.2 --nu 0.3").code, 2);
  EXPECT_EQ(cli("--no-such-flag").code, 2);
}

TEST(Cli, SingularParametersExitCode) {
  // Coincident lambdas make the determinant formula degenerate.
  EXPECT_EQ(cli("--mode partition --lambda 0.3,0.3 --nu 0.2,0.6").code, 4);
}

TEST(Cli, BaseAndSpacingBuildArithmeticLists) {
  const auto r = cli("--mode partition --n 3 --lambda-base 0.1 --dz 0.2 --nu-base 0.3:0.1 --dw 0.1 --out json");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["params"]["lambda"][2][0].get<double>(), 0.7, 1e-15);
  EXPECT_NEAR(j["params"]["nu"][0][1].get<double>(), 0.1, 1e-15);
}

TEST(Cli, HomogeneousTypeIUsesTheLimitFormula) {
  const auto r = cli("--mode typeI --n 3 --m 2 --l 3 --lambda-base 0.3 --nu-base 0.7");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"][0].get<double>(), 0.0048350689105868816, 1e-12);
}

TEST(Cli, SweepTypeIIShapeAndSums) {
  const auto r = cli(std::string("--mode sweep --kind typeII --method both ") + kParams);
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["entries"].size(), 2u * 3u);
  EXPECT_EQ(j["row_sums"].size(), 2u);
  EXPECT_EQ(j["col_sums"].size(), 3u);
  double total = 0;
  for (const auto& e : j["entries"]) {
    total += e["value"][0].get<double>();
    EXPECT_LT(e["residual"].get<double>(), 1e-8);
  }
  EXPECT_NEAR(j["total"][0].get<double>(), total, 1e-12);
  EXPECT_FALSE(j["total_equals_one"].get<bool>());
}

TEST(Cli, SweepCsvColumns) {
  const auto r = cli(std::string("--mode sweep --kind typeI --out csv ") + kParams);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "m,l,re,im,residual");
  EXPECT_NE(r.out.find("\n1,2,"), std::string::npos);
  EXPECT_NE(r.out.find("\n*,*,"), std::string::npos);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const std::string path = testing::TempDir() + "sixv_cfg.json";
  {
    std::ofstream f(path);
    f << R"({"mode": "typeI", "lambda": [0.21, 0.47, 0.83], "nu": [[0.34, 0], 0.62, "0.91"], "m": 1, "l": 2})";
  }
  auto r = cli("--config " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"][0].get<double>(), 0.19912482849514687, 1e-11);
  r = cli("--config " + path + " --m 2 --l 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"][0].get<double>(), -3.7183051188115792, 1e-10);
  {
    std::ofstream f(path);
    f << R"({"mode": "typeI", "bogus": 1})";
  }
  EXPECT_EQ(cli("--config " + path).code, 2);
}

TEST(Cli, JsonRoundTrip) {
  const auto r = cli(std::string("--mode typeII --m 2 --l 3 --method both --no-timing ") + kParams);
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(json::parse(j.dump()), j);
  EXPECT_EQ(j["elapsed_ms"].get<double>(), 0.0);
}

TEST(Cli, VerifyWithoutDrawsStillRunsFixedRows) {
  const auto r = cli("--mode verify --draws 0");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_GE(j["checks"].size(), 1u);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["draw"].is_null());
}

TEST(Cli, OutputIndependentOfThreadCount) {
  const std::string args = std::string("--mode sweep --kind typeII --no-timing ") + kParams;
  const auto a = cli(args + " --threads 1");
  const auto b = cli(args + " --threads 8");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
