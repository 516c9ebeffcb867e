#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pidtrunc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pidtrunc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PIDTRUNC_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pidtrunc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Cli, SelectXorReturnsBothInputs) {
  const auto r = run_cli({"select", "--dist", data("xor.json"), "--target", "Y", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "k,relevant\n2,X1\n2,X2\n");
}

TEST(Cli, SelectJson) {
  const auto r = run_cli({"select", "--dist", data("xor.json"), "--k", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("relevant"), nlohmann::json({"X1", "X2"}));
  EXPECT_NEAR(j.at("I_k")[0].get<double>(), std::log(2.0), 1e-12);
  EXPECT_EQ(j.at("units"), "nats");
}

TEST(Cli, ExactXorProfile) {
  const auto r = run_cli({"exact", "--dist", data("xor.json"), "--units", "bits"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "k,I_k,delta");
  EXPECT_EQ(l[1].substr(0, 4), "1,0,");
  EXPECT_NEAR(std::stod(l[2].substr(2)), 1.0, 1e-12);
  EXPECT_NEAR(std::stod(l[3].substr(2)), 1.0, 1e-12);
  EXPECT_EQ(l[3].back(), ',');
}

TEST_F(CliFiles, ModelWorkflow) {
  const auto spec = path("weak.json");
  const auto samples = path("s.csv");
  auto r = run_cli({"model-gen", "--M", "8", "--seed", "3", "--out", spec, "--draw", "500",
                    "--samples-out", samples});
  ASSERT_EQ(r.code, 0) << r.err;

  r = run_cli({"exact", "--model", spec, "--kmax", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 6u);

  r = run_cli({"estimate", "--samples", samples, "--target", "Y", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "N_s,k,raw,corrected,exact,i_hat");
  EXPECT_EQ(l[1].substr(0, 6), "500,2,");

  r = run_cli({"estimate", "--samples", samples, "--target", "Y", "--kmax", "5", "--model", spec,
               "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.at("estimates").size(), 5u);
  for (const auto& e : j.at("estimates")) {
    EXPECT_FALSE(e.at("exact").is_null());
    EXPECT_LE(e.at("corrected").get<double>(), e.at("raw").get<double>());
  }

  r = run_cli({"estimate", "--samples", samples, "--target", "Y", "--k", "1", "--no-bias-correction"});
  ASSERT_EQ(r.code, 0) << r.err;
  l = lines(r.out);
  EXPECT_NE(l[1].find(",,"), std::string::npos);
}

TEST_F(CliFiles, ExperimentOutputIsIndependentOfThreads) {
  auto a = run_cli({"exp-sampling", "--grid", "64,128", "--resamples", "10", "--threads", "1"});
  auto b = run_cli({"exp-sampling", "--grid", "64,128", "--resamples", "10", "--threads", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out)[0], "# pidtrunc 0.1.0");

  const auto out = path("weak.csv");
  ASSERT_EQ(run_cli({"exp-weak", "--seeds", "1,2", "--out", out}).code, 0);
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(lines(text.str()).size(), 2u + 2 * 10);
}

TEST_F(CliFiles, MalformedInputsExitTwo) {
  const auto bad = path("bad.json");
  std::ofstream(bad) << "{\"variables\": [";
  auto r = run_cli({"exact", "--dist", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());

  const auto csv = path("bad.csv");
  std::ofstream(csv) << "X,Y\n0,1\n1\n";
  r = run_cli({"estimate", "--samples", csv, "--target", "Y", "--k", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--dist", data("missing.json")}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--dist", data("xor.json"), "--target", "Z"}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--dist", data("xor.json"), "--kmax", "9"}).code, 2);
  EXPECT_EQ(run_cli({"select", "--dist", data("xor.json")}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--dist", data("xor.json"), "--units", "dits"}).code, 2);
  EXPECT_EQ(run_cli({"exp-sampling", "--grid", "128,64"}).code, 2);
}

TEST(Cli, DomainErrorsExitThree) {
  const auto r = run_cli({"exp-sampling", "--eps", "0,0,0", "--grid", "64", "--resamples", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("I^(1)"), std::string::npos);
}

TEST(Cli, VersionAndHelp) {
  auto r = run_cli({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
  r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("exp-sampling"), std::string::npos);
}
