#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace qes::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the installed binary through the shell; returns the exit status.
int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qes_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SampleIsByteIdenticalAcrossRunsAndWorkers) {
  const std::vector<std::string> base{"sample", "--ensemble", "real-s3", "--n", "3000000", "--seed", "42"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return invoke(args);
  };
  const auto first = with({"--workers", "1"});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(with({"--workers", "1"}).out, first.out);
  EXPECT_EQ(with({"--workers", "8"}).out, first.out);
  EXPECT_NE(invoke({"sample", "--n", "3000000", "--seed", "43", "--workers", "1"}).out, first.out);
  EXPECT_EQ(lines(first.out)[1], "# ensemble=real-s3 master_seed=42 samples=3000000");
}

TEST_F(CliTest, SampleWritesFileAndJson) {
  ASSERT_EQ(invoke({"sample", "--ensemble", "complex-s7", "--n", "1e4", "--bins", "0.05", "--out", path("h.csv")}).code, 0);
  EXPECT_EQ(lines(slurp(path("h.csv")))[0], "# joint_histogram delta_c=0.05 delta_i=0.05 total=10000");

  const auto json = invoke({"sample", "--ensemble", "param", "--n", "500", "--format", "json", "--delta-i", "0.1"});
  ASSERT_EQ(json.code, 0) << json.err;
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["total"], 500);
  EXPECT_EQ(j["delta_i"], 0.1);
  EXPECT_EQ(j["ensemble"], "param");
}

TEST_F(CliTest, SampleRejectsBadConfig) {
  EXPECT_EQ(invoke({"sample", "--n", "0"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"sample", "--n", "1.5"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"sample", "--ensemble", "thermal"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"sample", "--n", "10", "--bins", "0"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"sample", "--n", "10", "--workers", "0"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"sample", "--n", "10", "--format", "xml"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({}).code, kExitBadArguments);
}

TEST_F(CliTest, IoFailuresExitThree) {
  EXPECT_EQ(invoke({"sample", "--n", "10", "--out", path("missing/dir/h.csv")}).code, kExitIo);
  EXPECT_EQ(invoke({"table", "--hist", path("nope.csv")}).code, kExitIo);
  std::ofstream(path("bad.csv")) << "not a histogram\n";
  EXPECT_EQ(invoke({"table", "--hist", path("bad.csv")}).code, kExitIo);
  EXPECT_EQ(invoke({"density", "--hist", path("bad.csv")}).code, kExitIo);
}

TEST_F(CliTest, CurveEndpointsAndTableRow) {
  const auto r = invoke({"curve"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 103u);
  EXPECT_EQ(rows[0], "# ridge_curve points=101");
  EXPECT_EQ(rows[1], "c,ridge_i,bound_e");
  EXPECT_EQ(rows[2], "0,0,0");
  EXPECT_EQ(rows.back(), "1,1,1");
  const std::string row37 = rows[2 + 37];
  ASSERT_EQ(row37.substr(0, 5), "0.37,");
  const double ridge = std::stod(row37.substr(5, row37.find(',', 5) - 5));
  EXPECT_NEAR(ridge, 0.10, 0.005);
  EXPECT_EQ(invoke({"curve", "--points", "1"}).code, kExitBadArguments);
  EXPECT_EQ(nlohmann::json::parse(invoke({"curve", "--points", "3", "--format", "json"}).out).size(), 3u);
}

TEST_F(CliTest, TableFlagsEmptySlices) {
  std::ofstream(path("h.csv")) << "# joint_histogram delta_c=0.1 delta_i=0.1 total=4\n"
                                  "3,0,2\n7,0,2\n";
  const auto r = invoke({"table", "--hist", path("h.csv"), "--centers", "0.05,0.5", "--halfwidth", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1], "i_center,c_star,mean_c,std_c,count,ridge_c,status");
  std::vector<std::string> f;
  std::istringstream in(rows[2]);
  for (std::string x; std::getline(in, x, ',');) f.push_back(x);
  ASSERT_EQ(f.size(), 7u);
  EXPECT_NEAR(std::stod(f[1]), 0.35, 1e-12);
  EXPECT_NEAR(std::stod(f[2]), 0.55, 1e-12);
  EXPECT_NEAR(std::stod(f[3]), 0.2, 1e-12);
  EXPECT_EQ(f[4], "4");
  EXPECT_EQ(f[6], "ok");
  EXPECT_EQ(rows[3].substr(0, 20), "0.5,nan,nan,nan,0,0.");
  EXPECT_EQ(rows[3].substr(rows[3].rfind(',')), ",empty");

  const auto j = nlohmann::json::parse(
      invoke({"table", "--hist", path("h.csv"), "--centers", "0.5", "--format", "json"}).out);
  EXPECT_EQ(j[0]["status"], "empty");
  EXPECT_TRUE(j[0]["c_star"].is_null());
}

TEST_F(CliTest, TableFromSampledHistogram) {
  ASSERT_EQ(invoke({"sample", "--n", "2e6", "--bins", "0.01", "--out", path("h.csv")}).code, 0);
  const auto r = invoke({"table", "--hist", path("h.csv"), "--centers", "0.5", "--halfwidth", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = lines(r.out)[2];
  std::vector<double> v;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',') && v.size() < 6;) v.push_back(std::stod(f));
  EXPECT_NEAR(v[1], 0.78, 0.03);
  EXPECT_NEAR(v[2], 0.81, 0.02);
  EXPECT_NEAR(v[3], 0.09, 0.02);
  EXPECT_NEAR(v[5], 0.7798, 1e-3);
}

TEST_F(CliTest, DensityMarginalAndSlice) {
  ASSERT_EQ(invoke({"sample", "--n", "2e5", "--out", path("h.csv")}).code, 0);
  const auto m = invoke({"density", "--hist", path("h.csv"), "--axis", "c"});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto rows = lines(m.out);
  EXPECT_EQ(rows[1], "bin_center,density");
  EXPECT_EQ(rows.size(), 102u);
  const auto s = invoke({"density", "--hist", path("h.csv"), "--axis", "i", "--slice", "0.5", "0.6"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(lines(s.out)[0].find("given_c=0.5:0.6"), std::string::npos);
  EXPECT_EQ(invoke({"density", "--hist", path("h.csv"), "--axis", "x"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"density", "--hist", path("h.csv"), "--slice", "0.6", "0.5"}).code, kExitBadArguments);
}

TEST_F(CliTest, VerifyExitCodes) {
  const auto all = invoke({"verify", "--all", "--n", "1000000", "--seed", "7"});
  EXPECT_EQ(all.code, kExitOk) << all.out;
  const auto reports = lines(all.out);
  EXPECT_EQ(reports.size(), 8u);
  for (const auto& line : reports) EXPECT_TRUE(nlohmann::json::parse(line)["pass"].get<bool>()) << line;

  const auto bound = invoke({"verify", "--check", "bound", "--ensemble", "complex-s7"});
  EXPECT_EQ(bound.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(bound.out)["name"], "bound:complex-s7");

  EXPECT_EQ(invoke({"verify", "--check", "appendix", "--n", "0"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"verify", "--check", "nonsense"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"verify"}).code, kExitBadArguments);
  EXPECT_EQ(invoke({"verify", "--check", "ridge", "--n", "1000"}).code, kExitBadArguments);
}

TEST_F(CliTest, VerifyFailureExitsOne) {
  // A histogram whose columns peak far from the ridge.
  std::ostringstream h;
  h << "# joint_histogram delta_c=0.01 delta_i=0.01 total=" << 100 * 150000 << '\n';
  for (int ci = 0; ci < 100; ++ci) h << ci << ",0,50000\n" << ci << ",90,100000\n";
  std::ofstream(path("far.csv")) << h.str();
  const auto r = invoke({"verify", "--check", "ridge", "--hist", path("far.csv")});
  EXPECT_EQ(r.code, kExitCheckFailed) << r.err;
  EXPECT_FALSE(nlohmann::json::parse(r.out)["pass"].get<bool>());
}

TEST_F(CliTest, BinaryHonoursWorkerEnvironment) {
  const std::string cli = QES_CLI_PATH;
  const std::string common = " sample --n 2500000 --seed 9 --out ";
  ASSERT_EQ(shell("QES_WORKERS=1 " + cli + common + path("w1.csv")), 0);
  ASSERT_EQ(shell("QES_WORKERS=4 " + cli + common + path("w4.csv")), 0);
  ASSERT_EQ(shell("QES_WORKERS=4 " + cli + common + path("flag.csv") + " --workers 2"), 0);
  EXPECT_EQ(slurp(path("w1.csv")), slurp(path("w4.csv")));
  EXPECT_EQ(slurp(path("w1.csv")), slurp(path("flag.csv")));
  EXPECT_EQ(shell("QES_WORKERS=zero " + cli + common + path("bad.csv") + " 2>/dev/null"), 2);
  EXPECT_EQ(shell(cli + " --help >/dev/null"), 0);
  EXPECT_EQ(shell(cli + " verify --check appendix --n 0 2>/dev/null"), 2);
}

}  // namespace
}  // namespace qes::cli
