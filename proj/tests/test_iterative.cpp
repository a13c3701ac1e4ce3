#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lfdrkit/error.hpp"
#include "lfdrkit/iterative.hpp"
#include "lfdrkit/kde.hpp"
#include "support.hpp"

using namespace lfdrkit;
using lfdrkit::testing::integrate;

namespace {

const KernelSpec kGauss(KernelFamily::gaussian);
const KernelSpec kTri(KernelFamily::triangular);
const KernelSpec kRect(KernelFamily::rectangular);

IterativeConfig msl_config(std::uint64_t seed) {
  IterativeConfig c;
  c.rule = UpdateRule::msl;
  c.init_seed = seed;
  return c;
}

IterativeConfig kerfdr_config(std::uint64_t seed) {
  IterativeConfig c;
  c.rule = UpdateRule::kerfdr;
  c.init_seed = seed;
  return c;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no lfdrkit::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(NormalizedKernel, Examples) {
  EXPECT_NEAR(normalized_kernel_eval(0.5, kRect, Bandwidth(0.1), 0.55), 5.0, 1e-12);
  EXPECT_NEAR(normalized_kernel_eval(0.0, kRect, Bandwidth(0.2), 0.1), 5.0, 1e-12);
  for (double c : {0.0, 0.01, 0.5, 1.0}) {
    const double q = integrate([&](double x) { return normalized_kernel_eval(c, kGauss, Bandwidth(0.1), x); }, 0.0, 1.0,
                               100000);
    EXPECT_NEAR(q, 1.0, 1e-8);
  }
  EXPECT_EQ(code_of([] { normalized_kernel_eval(2.0, kTri, Bandwidth(0.1), 0.5); }), ErrorCode::ZeroMass);
}

TEST(IterativeConfig, Validation) {
  EXPECT_EQ(code_of([] { validate(msl_config(0), kTri); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { validate(msl_config(0), kRect); }), ErrorCode::InvalidConfig);
  EXPECT_NO_THROW(validate(msl_config(0), kGauss));
  EXPECT_NO_THROW(validate(kerfdr_config(0), kTri));
  auto c = kerfdr_config(0);
  c.epsilon = 0.0;
  EXPECT_EQ(code_of([&] { validate(c, kTri); }), ErrorCode::InvalidConfig);
  c = kerfdr_config(0);
  c.max_iterations = 0;
  EXPECT_EQ(code_of([&] { validate(c, kTri); }), ErrorCode::InvalidConfig);
}

TEST(RunIterative, ThetaMustBeInterior) {
  const PValueSample s(lfdrkit::testing::uniforms(50, 1));
  for (double t : {0.0, 1.0, -0.2}) {
    EXPECT_EQ(code_of([&] { run_iterative(s, t, kGauss, Bandwidth(0.1), msl_config(0)); }), ErrorCode::InvalidTheta);
    EXPECT_EQ(code_of([&] { run_iterative(s, t, kTri, Bandwidth(0.1), kerfdr_config(0)); }), ErrorCode::InvalidTheta);
  }
}

TEST(RunIterative, MslRejectsCompactKernel) {
  const PValueSample s(lfdrkit::testing::uniforms(50, 1));
  EXPECT_EQ(code_of([&] { run_iterative(s, 0.5, kTri, Bandwidth(0.1), msl_config(0)); }), ErrorCode::InvalidConfig);
}

TEST(RunIterative, Deterministic) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 400, 3);
  for (auto cfg : {msl_config(9), kerfdr_config(9)}) {
    const KernelSpec k = cfg.rule == UpdateRule::msl ? kGauss : kTri;
    const auto a = run_iterative(s, 0.65, k, Bandwidth(0.06), cfg);
    const auto b = run_iterative(s, 0.65, k, Bandwidth(0.06), cfg);
    EXPECT_EQ(a.weights, b.weights);
    ASSERT_EQ(a.trace.records.size(), b.trace.records.size());
    for (std::size_t r = 0; r < a.trace.records.size(); ++r)
      EXPECT_EQ(a.trace.records[r].criterion, b.trace.records[r].criterion);
  }
}

TEST(RunIterative, HugeEpsilonStopsAfterOneUpdate) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 200, 4);
  for (auto cfg : {msl_config(1), kerfdr_config(1)}) {
    cfg.epsilon = 1e300;
    const KernelSpec k = cfg.rule == UpdateRule::msl ? kGauss : kTri;
    const auto fit = run_iterative(s, 0.65, k, Bandwidth(0.08), cfg);
    EXPECT_EQ(fit.trace.records.size(), 1u);
    EXPECT_EQ(fit.trace.iterations_used, 1);
    EXPECT_TRUE(fit.trace.converged);
  }
}

TEST(RunIterative, MaxIterationsWithoutConvergence) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 200, 4);
  auto cfg = msl_config(1);
  cfg.epsilon = 1e-300;
  cfg.max_iterations = 3;
  const auto fit = run_iterative(s, 0.65, kGauss, Bandwidth(0.08), cfg);
  EXPECT_FALSE(fit.trace.converged);
  EXPECT_EQ(fit.trace.iterations_used, 3);
}

TEST(RunIterative, KerfdrSelfConsistent) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PValueSample s = lfdrkit::testing::model_sample(ModelKind::laplace_shift, 0.65, 500, seed);
    const Bandwidth h = silverman_bandwidth(s);
    const auto cfg = kerfdr_config(seed);
    const auto fit = run_iterative(s, 0.65, kTri, h, cfg);
    ASSERT_TRUE(fit.trace.converged);
    const auto again = apply_weight_map(s, 0.65, kTri, h, cfg, fit.weights);
    for (std::size_t i = 0; i < again.size(); ++i)
      EXPECT_LT(std::fabs(again[i] - fit.weights[i]) / fit.weights[i], cfg.epsilon) << i;
  }
}

TEST(RunIterative, MslDescent) {
  for (auto kind : {ModelKind::beta_tail, ModelKind::gaussian_shift, ModelKind::laplace_shift}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const PValueSample s = lfdrkit::testing::model_sample(kind, 0.65, 300, seed);
      const auto fit = run_iterative(s, 0.65, kGauss, silverman_bandwidth(s), msl_config(seed));
      const auto& r = fit.trace.records;
      for (std::size_t t = 1; t < r.size(); ++t) EXPECT_GE(r[t - 1].criterion - r[t].criterion, -1e-10);
    }
  }
}

TEST(RunIterative, TraceCriterionIsSmoothedLoglik) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 250, 2);
  const Bandwidth h(0.07);
  auto cfg = msl_config(3);
  cfg.record_weights = true;
  cfg.max_iterations = 6;
  cfg.grid_size = 512;
  const auto fit = run_iterative(s, 0.65, kGauss, h, cfg);
  ASSERT_EQ(fit.trace.weights.size(), fit.trace.records.size() + 1);
  for (std::size_t t = 0; t < fit.trace.records.size(); ++t) {
    const auto f = msl_grid_density(s, kGauss, h, 512, fit.trace.weights[t]);
    EXPECT_NEAR(fit.trace.records[t].criterion, smoothed_loglik(s, 0.65, f, kGauss, h), 1e-12);
  }
}

TEST(RunIterative, WeightsStayInOpenUnitInterval) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::gaussian_shift, 0.65, 400, 8);
  for (auto cfg : {msl_config(2), kerfdr_config(2)}) {
    cfg.record_weights = true;
    const KernelSpec k = cfg.rule == UpdateRule::msl ? kGauss : kTri;
    const auto fit = run_iterative(s, 0.65, k, Bandwidth(0.1), cfg);
    for (const auto& w : fit.trace.weights) {
      for (double v : w) {
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
      }
    }
  }
}

TEST(RunIterative, MslLowerBound) {
  const double theta = 0.65;
  const double h = 0.3;
  // inf of K_h over [-1, 1]
  const double m = kGauss(1.0 / h) / h;
  const double bound = (1.0 - theta) * m / (theta + (1.0 - theta) * m);
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, theta, 300, 6);
  auto cfg = msl_config(4);
  cfg.record_weights = true;
  const auto fit = run_iterative(s, theta, kGauss, Bandwidth(h), cfg);
  for (std::size_t t = 1; t < fit.trace.weights.size(); ++t)
    for (double v : fit.trace.weights[t]) EXPECT_GE(v, bound * (1.0 - 1e-12));
}

TEST(RunIterative, MslIteratesIntegrateToOne) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::laplace_shift, 0.65, 300, 1);
  const Bandwidth h = silverman_bandwidth(s);
  auto cfg = msl_config(5);
  cfg.record_weights = true;
  const auto fit = run_iterative(s, 0.65, kGauss, h, cfg);
  for (const auto& w : fit.trace.weights) {
    EXPECT_NEAR(msl_grid_density(s, kGauss, h, cfg.grid_size, w).integral(), 1.0, 1e-12);
    const auto closed = WeightedKernelDensity::from_raw_weights(
        std::vector<double>(s.values().begin(), s.values().end()), w, kGauss, h, true);
    EXPECT_NEAR(integrate(closed, 0.0, 1.0, 20000), 1.0, 1e-6);
  }
  EXPECT_TRUE(fit.density.normalized());
  EXPECT_NEAR(integrate(fit.density, 0.0, 1.0, 20000), 1.0, 1e-6);
}

TEST(RunIterative, MslFixedPointStable) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 400, 12);
  const Bandwidth h = silverman_bandwidth(s);
  const auto first = run_iterative(s, 0.65, kGauss, h, msl_config(1));
  ASSERT_TRUE(first.trace.converged);
  auto cfg = msl_config(1);
  cfg.init = WeightInit::given;
  cfg.initial_weights = first.weights;
  const auto second = run_iterative(s, 0.65, kGauss, h, cfg);
  EXPECT_EQ(second.trace.iterations_used, 1);
  EXPECT_TRUE(second.trace.converged);
}

TEST(RunIterative, HalfInitIsDeterministicAcrossSeeds) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 200, 12);
  auto a = kerfdr_config(1);
  auto b = kerfdr_config(2);
  a.init = b.init = WeightInit::half;
  EXPECT_EQ(run_iterative(s, 0.65, kTri, Bandwidth(0.1), a).weights,
            run_iterative(s, 0.65, kTri, Bandwidth(0.1), b).weights);
}

TEST(RunIterative, GivenInitValidated) {
  const PValueSample s(lfdrkit::testing::uniforms(10, 1));
  auto cfg = kerfdr_config(0);
  cfg.init = WeightInit::given;
  cfg.initial_weights = {0.5, 0.5};
  EXPECT_EQ(code_of([&] { run_iterative(s, 0.5, kTri, Bandwidth(0.3), cfg); }), ErrorCode::LengthMismatch);
  cfg.initial_weights.assign(10, 0.0);
  EXPECT_EQ(code_of([&] { run_iterative(s, 0.5, kTri, Bandwidth(0.3), cfg); }), ErrorCode::InvalidConfig);
}

TEST(RunIterative, KerfdrDensityUsesPlainKernels) {
  const PValueSample s = lfdrkit::testing::model_sample(ModelKind::beta_tail, 0.65, 200, 12);
  const auto fit = run_iterative(s, 0.65, kTri, Bandwidth(0.1), kerfdr_config(3));
  EXPECT_FALSE(fit.density.normalized());
  EXPECT_NEAR(integrate(fit.density, -0.1, 1.1, 20000), 1.0, 1e-6);
}
