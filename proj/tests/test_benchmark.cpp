#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lfdrkit/benchmark.hpp"
#include "lfdrkit/error.hpp"

using namespace lfdrkit;

namespace {

BenchmarkConfig tiny() {
  BenchmarkConfig c;
  c.models = {SimulationModel::standard(ModelKind::beta_tail, 0.65)};
  c.thetas = {0.65};
  c.sample_sizes = {300};
  c.repeats = 1;
  c.methods = {Method::rwk};
  c.bootstrap_replicates = 20;
  return c;
}

std::string csv_of(const BenchmarkReport& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

}  // namespace

TEST(Benchmark, OneRow) {
  const auto r = run_benchmark(tiny());
  ASSERT_EQ(r.rows.size(), 1u);
  const auto& row = r.rows[0];
  EXPECT_EQ(row.method, Method::rwk);
  EXPECT_EQ(row.n, 300u);
  EXPECT_EQ(row.successes, 1);
  EXPECT_EQ(row.failures, 0);
  EXPECT_GE(row.rmise, 0.0);
  EXPECT_GE(row.rmse, 0.0);
  EXPECT_TRUE(std::isnan(row.mean_iterations) || row.mean_iterations == 0.0);
}

TEST(Benchmark, DefaultGridCardinality) {
  BenchmarkConfig c;
  c.repeats = 2;
  c.sample_sizes = {500};
  c.bootstrap_replicates = 20;
  const auto r = run_benchmark(c);
  EXPECT_EQ(r.rows.size(), 3u * 2u * 3u);
  for (const auto& row : r.rows) EXPECT_EQ(row.successes + row.failures, 2);
  // Ordered by model, theta, n, then method.
  EXPECT_EQ(r.rows[0].model.kind, ModelKind::beta_tail);
  EXPECT_EQ(r.rows[0].method, Method::rwk);
  EXPECT_EQ(r.rows[2].method, Method::msl);
  EXPECT_EQ(r.rows[3].model.theta, 0.85);
  EXPECT_EQ(r.rows[6].model.kind, ModelKind::gaussian_shift);
}

TEST(Benchmark, BitIdenticalAcrossRunsAndThreads) {
  BenchmarkConfig c = tiny();
  c.models.push_back(SimulationModel::standard(ModelKind::laplace_shift, 0.65));
  c.methods = {Method::naive, Method::rwk, Method::kerfdr, Method::msl};
  c.repeats = 3;
  c.master_seed = 77;
  const std::string a = csv_of(run_benchmark(c));
  EXPECT_EQ(a, csv_of(run_benchmark(c)));
  c.threads = 4;
  EXPECT_EQ(a, csv_of(run_benchmark(c)));
  c.master_seed = 78;
  EXPECT_NE(a, csv_of(run_benchmark(c)));
}

TEST(Benchmark, CsvSchema) {
  const auto r = run_benchmark(tiny());
  std::istringstream in(csv_of(r));
  std::string header, line, extra;
  std::getline(in, header);
  EXPECT_EQ(header, "model,theta,n,method,rmise,rmse,mean_theta_hat,mean_iters,failures");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("1,0.65", 0), 0u) << line;
  EXPECT_NE(line.find(",300,rwk,"), std::string::npos);
  EXPECT_FALSE(std::getline(in, extra) && !extra.empty());
  // At least 12 significant digits for the metrics.
  const auto rmise_field = line.substr(line.find(",rwk,") + 5);
  EXPECT_GE(rmise_field.find(','), 13u);
}

TEST(Benchmark, JsonReport) {
  const auto j = nlohmann::json::parse(to_json(run_benchmark(tiny())));
  ASSERT_TRUE(j.contains("cells"));
  ASSERT_EQ(j["cells"].size(), 1u);
  EXPECT_EQ(j["cells"][0]["model"], 1);
  EXPECT_EQ(j["cells"][0]["n"], 300);
  EXPECT_TRUE(j["cells"][0]["methods"].contains("rwk"));
  EXPECT_EQ(j["config"]["repeats"], 1);
}

TEST(Benchmark, FailuresAreCounted) {
  BenchmarkConfig c = tiny();
  // lambda = 0 counts every p-value, so theta_hat = 1 in every replicate.
  c.lambda_grid = {0.0};
  c.repeats = 2;
  c.methods = {Method::naive, Method::rwk};
  const auto r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 2u);
  // naive still has a (zero) density; rwk has nothing to estimate.
  EXPECT_EQ(r.rows[0].failures, 0);
  EXPECT_EQ(r.rows[1].failures, 2);
  EXPECT_TRUE(std::isnan(r.rows[1].rmise));
}

TEST(Benchmark, ConsistencyTrend) {
  BenchmarkConfig c = tiny();
  c.sample_sizes = {500, 5000};
  c.repeats = 10;
  c.methods = {Method::rwk, Method::kerfdr, Method::msl};
  c.bootstrap_replicates = 50;
  const auto r = run_benchmark(c);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_LT(r.rows[3 + m].rmise, r.rows[m].rmise) << to_string(r.rows[m].method);
}

TEST(Benchmark, ConfigValidation) {
  BenchmarkConfig c = tiny();
  c.repeats = 0;
  EXPECT_THROW(validate(c), Error);
  c = tiny();
  c.sample_sizes = {1};
  EXPECT_THROW(validate(c), Error);
  c = tiny();
  c.methods.clear();
  EXPECT_THROW(validate(c), Error);
  c = tiny();
  c.thetas = {1.2};
  EXPECT_THROW(run_benchmark(c), Error);
}

TEST(Benchmark, FormatNumber) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}
