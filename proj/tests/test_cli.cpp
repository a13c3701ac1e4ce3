#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "lfdrkit/random.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = lfdrkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lfdrkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_NE(run({"fit", "--help"}).out.find("--bandwidth"), std::string::npos);
}

TEST_F(CliTest, SimulateDeterministic) {
  const std::vector<std::string> base = {"simulate", "--model", "1", "--theta", "0.65", "--n", "500", "--seed", "7"};
  auto a = base, b = base;
  a.insert(a.end(), {"--output-prefix", path("a")});
  b.insert(b.end(), {"--output-prefix", path("b")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  const auto rows = read_csv(path("a.csv"));
  ASSERT_EQ(rows.size(), 501u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p_value", "z_label", "true_f", "true_lfdr"}));
}

TEST_F(CliTest, SimulateColumnsAreConsistent) {
  ASSERT_EQ(run({"simulate", "--model", "1", "--n", "300", "--seed", "3", "--output-prefix", path("s")}).code, 0);
  const auto rows = read_csv(path("s.csv"));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double f = std::stod(rows[r][2]);
    const double l = std::stod(rows[r][3]);
    EXPECT_NEAR(l, 0.65 / (0.65 + 0.35 * f), 1e-12);
    EXPECT_NEAR(f, 4.0 * std::pow(1.0 - std::stod(rows[r][0]), 3.0), 1e-12);
  }
}

TEST_F(CliTest, SimulateNullOnly) {
  ASSERT_EQ(run({"simulate", "--model", "2", "--theta", "1", "--n", "200", "--output-prefix", path("s")}).code, 0);
  const auto rows = read_csv(path("s.csv"));
  for (std::size_t r = 1; r < rows.size(); ++r) EXPECT_EQ(rows[r][1], "0");
}

TEST_F(CliTest, SimulateInvalidParameters) {
  EXPECT_EQ(run({"simulate", "--model", "4", "--output-prefix", path("s")}).code, 2);
  EXPECT_EQ(run({"simulate", "--theta", "1.5", "--output-prefix", path("s")}).code, 2);
  EXPECT_EQ(run({"simulate", "--rho", "-1", "--output-prefix", path("s")}).code, 2);
  EXPECT_EQ(run({"simulate", "--n", "0", "--output-prefix", path("s")}).code, 2);
}

TEST_F(CliTest, SimulateThenFitRoundTrip) {
  ASSERT_EQ(run({"simulate", "--model", "3", "--n", "800", "--seed", "2", "--output-prefix", path("s")}).code, 0);
  for (const std::string method : {"naive", "rwk", "kerfdr", "msl"}) {
    const auto r = run({"fit", "--input", path("s.csv"), "--column", "p_value", "--method", method, "--output-prefix",
                        path("f_" + method)});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(path("f_" + method + ".json")));
    for (const char* key : {"theta_hat", "lambda", "method", "converged", "iterations"}) EXPECT_TRUE(j.contains(key));
    EXPECT_EQ(j["method"], method);
    const auto rows = read_csv(path("f_" + method + ".csv"));
    ASSERT_EQ(rows.size(), 801u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p_value", "f_hat", "lfdr_hat", "fdr_hat"}));
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double l = std::stod(rows[k][2]);
      EXPECT_GE(l, 0.0);
      EXPECT_LE(l, 1.0);
    }
    if (method == "msl" || method == "kerfdr") {
      EXPECT_TRUE(j["converged"].is_boolean());
      EXPECT_GE(j["iterations"].get<int>(), 1);
    }
  }
}

TEST_F(CliTest, FitUniformsLooksNull) {
  lfdrkit::Rng rng(0);
  std::ostringstream text;
  text.precision(17);
  for (int i = 0; i < 1000; ++i) text << rng.uniform() << '\n';
  write("u.txt", text.str());
  const auto r = run({"fit", "--input", path("u.txt"), "--method", "rwk", "--output-prefix", path("u")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("u.json")));
  EXPECT_GE(j["theta_hat"].get<double>(), 0.9);
  const auto rows = read_csv(path("u.csv"));
  int near_one = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) near_one += std::stod(rows[k][2]) >= 0.8;
  EXPECT_GT(near_one, 500);
}

TEST_F(CliTest, FitMalformedInput) {
  write("bad.txt", "0.1\n0.2\n1.5\nabc\n\n0.3\n");
  const auto r = run({"fit", "--input", path("bad.txt"), "--output-prefix", path("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(":4:"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("o.csv")));
}

TEST_F(CliTest, FitMissingColumnOrFile) {
  write("c.csv", "a,b\n0.1,0.2\n");
  EXPECT_EQ(run({"fit", "--input", path("c.csv"), "--column", "p", "--output-prefix", path("o")}).code, 2);
  EXPECT_EQ(run({"fit", "--input", path("missing.txt"), "--output-prefix", path("o")}).code, 2);
}

TEST_F(CliTest, FitMslCompactKernelRejectedAtParse) {
  // The input file does not even exist as a p-value list; parse-time checks come first.
  write("x.txt", "0.5\n");
  const auto r = run({"fit", "--input", path("x.txt"), "--method", "msl", "--kernel", "rectangular"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("gaussian"), std::string::npos) << r.err;
}

TEST_F(CliTest, FitBadFlagValues) {
  write("x.txt", "0.5\n0.2\n");
  EXPECT_EQ(run({"fit", "--input", path("x.txt"), "--bandwidth", "wide"}).code, 2);
  EXPECT_EQ(run({"fit", "--input", path("x.txt"), "--theta", "2"}).code, 2);
  EXPECT_EQ(run({"fit", "--input", path("x.txt"), "--epsilon", "0"}).code, 2);
  EXPECT_EQ(run({"fit", "--input", path("x.txt"), "--method", "em"}).code, 2);
}

TEST_F(CliTest, FitEstimationFailure) {
  // Isolated points under a compact kernel: the leave-one-out density is zero everywhere.
  write("iso.txt", "0.1\n0.5\n0.9\n");
  const auto r = run({"fit", "--input", path("iso.txt"), "--method", "rwk", "--theta", "0.5", "--bandwidth", "0.01",
                      "--output-prefix", path("o")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("DegenerateWeights"), std::string::npos) << r.err;
}

TEST_F(CliTest, FitFixedThetaAndBandwidth) {
  write("x.txt", "# comment\n0.01\n0.02\n0.4\n0.5\n0.9\n0.7\n");
  const auto r = run({"fit", "--input", path("x.txt"), "--theta", "0.5", "--bandwidth", "0.3", "--method", "kerfdr",
                      "--output-prefix", path("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("o.json")));
  EXPECT_EQ(j["theta_hat"].get<double>(), 0.5);
  EXPECT_TRUE(j["lambda"].is_null());
  EXPECT_EQ(j["bandwidth"].get<double>(), 0.3);
  EXPECT_EQ(read_csv(path("o.csv")).size(), 7u);
}

TEST_F(CliTest, BenchSmallGrid) {
  const auto r = run({"bench", "--S", "2", "--n", "500", "--bootstrap", "20", "--output-prefix", path("b")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(path("b.csv"));
  EXPECT_EQ(rows.size(), 1u + 3u * 2u * 3u);
  EXPECT_EQ(rows[0].size(), 9u);
  EXPECT_NE(r.out.find("RMISE"), std::string::npos);
  EXPECT_TRUE(nlohmann::json::parse(slurp(path("b.json"))).contains("cells"));
}

TEST_F(CliTest, BenchDeterministicAcrossThreads) {
  const std::vector<std::string> base = {"bench", "--S", "2", "--n", "300", "--model", "1,3", "--theta", "0.65",
                                         "--method", "rwk,msl", "--bootstrap", "20", "--master-seed", "5"};
  auto a = base, b = base;
  a.insert(a.end(), {"--threads", "1", "--output-prefix", path("a")});
  b.insert(b.end(), {"--threads", "3", "--output-prefix", path("b")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, BenchConfigErrors) {
  EXPECT_EQ(run({"bench", "--S", "0", "--output-prefix", path("b")}).code, 2);
  EXPECT_EQ(run({"bench", "--n", "1", "--output-prefix", path("b")}).code, 2);
  EXPECT_EQ(run({"bench", "--model", "5", "--output-prefix", path("b")}).code, 2);
  EXPECT_EQ(run({"bench", "--method", "em", "--output-prefix", path("b")}).code, 2);
}
