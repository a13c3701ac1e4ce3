#include "lfdrkit/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "lfdrkit/error.hpp"
#include "lfdrkit/kde.hpp"
#include "lfdrkit/random.hpp"

namespace lfdrkit {

void validate(const BenchmarkConfig& config) {
  if (config.models.empty() || config.thetas.empty() || config.sample_sizes.empty() || config.methods.empty())
    throw Error(ErrorCode::InvalidConfig, "benchmark needs at least one model, theta, sample size and method");
  if (config.repeats < 1) throw Error(ErrorCode::InvalidConfig, "repeats must be at least 1");
  for (auto n : config.sample_sizes)
    if (n < 2) throw Error(ErrorCode::InvalidConfig, "sample sizes must be at least 2");
  for (double t : config.thetas)
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidConfig, "thetas must lie in [0, 1]");
  for (const auto& m : config.models) {
    try {
      validate(m);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
  }
  if (config.metric_grid_size < 2) throw Error(ErrorCode::InvalidConfig, "metric grid must have at least 2 points");
  if (config.bootstrap_replicates < 1) throw Error(ErrorCode::InvalidConfig, "bootstrap replicates must be at least 1");
  validate(config.iterative, KernelSpec(KernelFamily::gaussian));
}

namespace {

struct MethodOutcome {
  bool ok = false;
  double rmise = 0.0;
  double rmse = 0.0;
  double iterations = 0.0;
  double seconds = 0.0;
};

struct ReplicateOutcome {
  bool theta_ok = false;
  double theta_hat = 0.0;
  std::vector<MethodOutcome> methods;
};

struct Cell {
  std::size_t model_index;
  std::size_t theta_index;
  std::size_t size_index;
};

ReplicateOutcome run_replicate(const BenchmarkConfig& config, const Cell& cell, int replicate) {
  ReplicateOutcome out;
  out.methods.resize(config.methods.size());
  SimulationModel model = config.models[cell.model_index];
  model.theta = config.thetas[cell.theta_index];
  const std::size_t n = config.sample_sizes[cell.size_index];
  const std::uint64_t seed = derive_seed(
      config.master_seed, {cell.model_index, cell.theta_index, cell.size_index, static_cast<std::uint64_t>(replicate)});

  const auto sim = generate_sample(model, n, derive_seed(seed, {0}));
  const PValueSample sample(sim.p_values);
  ThetaEstimate theta{};
  std::vector<double> truth(n);
  try {
    theta = bootstrap_theta(sample, config.lambda_grid, config.bootstrap_replicates, derive_seed(seed, {1}));
    out.theta_hat = theta.value;
    out.theta_ok = true;
    for (std::size_t i = 0; i < n; ++i) truth[i] = true_lfdr(model, sim.p_values[i]);
  } catch (const Error&) {
    return out;
  }

  std::optional<Bandwidth> h;
  try {
    h = silverman_bandwidth(sample);
  } catch (const Error&) {
    return out;
  }

  IterativeConfig iterative = config.iterative;
  iterative.init = WeightInit::uniform_random;
  iterative.init_seed = derive_seed(seed, {2});
  for (std::size_t k = 0; k < config.methods.size(); ++k) {
    const Method method = config.methods[k];
    auto& m = out.methods[k];
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto result = fit_with(sample, method, theta, *h, default_kernel(method), iterative);
      if (!result.density) throw Error(ErrorCode::DegenerateWeights, "no density estimate (theta_hat = 1)");
      m.rmise = rmise(*result.density, model, config.metric_grid_size);
      m.rmse = rmse_lfdr(result.lfdr, truth);
      m.iterations = result.trace ? result.trace->iterations_used : 0.0;
      m.ok = std::isfinite(m.rmise) && std::isfinite(m.rmse);
    } catch (const Error&) {
      m.ok = false;
    }
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  validate(config);
  std::vector<Cell> cells;
  for (std::size_t m = 0; m < config.models.size(); ++m)
    for (std::size_t t = 0; t < config.thetas.size(); ++t)
      for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) cells.push_back({m, t, s});

  const auto repeats = static_cast<std::size_t>(config.repeats);
  const std::size_t jobs = cells.size() * repeats;
  std::vector<ReplicateOutcome> outcomes(jobs);

  // Results are keyed by job index, so scheduling order never leaks into the report.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1))
      outcomes[j] = run_replicate(config, cells[j / repeats], static_cast<int>(j % repeats));
  };
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  BenchmarkReport report{config, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    SimulationModel model = config.models[cells[c].model_index];
    model.theta = config.thetas[cells[c].theta_index];
    for (std::size_t k = 0; k < config.methods.size(); ++k) {
      BenchmarkRow row{model, config.sample_sizes[cells[c].size_index], config.methods[k], 0, 0, 0, 0, 0, 0, 0};
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto& o = outcomes[c * repeats + r];
        const auto& m = o.methods[k];
        row.wall_seconds += m.seconds;
        if (!o.theta_ok || !m.ok) {
          ++row.failures;
          continue;
        }
        ++row.successes;
        row.rmise += m.rmise;
        row.rmse += m.rmse;
        row.mean_theta_hat += o.theta_hat;
        row.mean_iterations += m.iterations;
      }
      if (row.successes > 0) {
        const double s = row.successes;
        row.rmise /= s;
        row.rmse /= s;
        row.mean_theta_hat /= s;
        row.mean_iterations /= s;
      } else {
        row.rmise = row.rmse = row.mean_theta_hat = row.mean_iterations = nan;
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "model,theta,n,method,rmise,rmse,mean_theta_hat,mean_iters,failures\n";
  for (const auto& r : report.rows) {
    out << model_number(r.model.kind) << ',' << format_number(r.model.theta) << ',' << r.n << ','
        << to_string(r.method) << ',' << format_number(r.rmise) << ',' << format_number(r.rmse) << ','
        << format_number(r.mean_theta_hat) << ',' << format_number(r.mean_iterations) << ',' << r.failures << '\n';
  }
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string to_json(const BenchmarkReport& report) {
  using nlohmann::json;
  const auto& c = report.config;
  json config = {
      {"thetas", c.thetas},
      {"sample_sizes", c.sample_sizes},
      {"repeats", c.repeats},
      {"master_seed", c.master_seed},
      {"lambda_grid", c.lambda_grid},
      {"bootstrap_replicates", c.bootstrap_replicates},
      {"metric_grid_size", c.metric_grid_size},
      {"epsilon", c.iterative.epsilon},
      {"max_iterations", c.iterative.max_iterations},
      {"grid_size", c.iterative.grid_size},
  };
  json models = json::array();
  for (const auto& m : c.models)
    models.push_back({{"model", model_number(m.kind)}, {"kind", to_string(m.kind)}, {"rho", m.rho}, {"mu", m.mu}});
  config["models"] = models;
  json methods = json::array();
  for (auto m : c.methods) methods.push_back(to_string(m));
  config["methods"] = methods;

  json cells = json::array();
  const std::size_t per_cell = c.methods.size();
  for (std::size_t start = 0; start < report.rows.size(); start += per_cell) {
    const auto& first = report.rows[start];
    json cell = {{"model", model_number(first.model.kind)},
                 {"kind", to_string(first.model.kind)},
                 {"rho", first.model.rho},
                 {"mu", first.model.mu},
                 {"theta", first.model.theta},
                 {"n", first.n}};
    json by_method = json::object();
    for (std::size_t k = start; k < start + per_cell; ++k) {
      const auto& r = report.rows[k];
      by_method[std::string(to_string(r.method))] = {
          {"rmise", number(r.rmise)},
          {"rmse", number(r.rmse)},
          {"mean_theta_hat", number(r.mean_theta_hat)},
          {"mean_iters", number(r.mean_iterations)},
          {"successes", r.successes},
          {"failures", r.failures},
          {"wall_seconds", r.wall_seconds},
      };
    }
    cell["methods"] = by_method;
    cells.push_back(cell);
  }
  return json{{"config", config}, {"cells", cells}}.dump(2);
}

void print_summary(std::ostream& out, const BenchmarkReport& report) {
  const auto flags = out.flags();
  out << std::left << std::setw(7) << "model" << std::setw(7) << "theta" << std::setw(7) << "n" << std::setw(8)
      << "method" << std::right << std::setw(11) << "RMISE" << std::setw(11) << "RMSE" << std::setw(10) << "theta^"
      << std::setw(9) << "iters" << std::setw(6) << "fail" << std::setw(10) << "secs" << '\n';
  for (const auto& r : report.rows) {
    out << std::left << std::setw(7) << model_number(r.model.kind) << std::setw(7) << r.model.theta << std::setw(7)
        << r.n << std::setw(8) << to_string(r.method) << std::right << std::fixed << std::setprecision(5)
        << std::setw(11) << r.rmise << std::setw(11) << r.rmse << std::setw(10) << r.mean_theta_hat
        << std::setprecision(1) << std::setw(9) << r.mean_iterations << std::setw(6) << r.failures
        << std::setprecision(2) << std::setw(10) << r.wall_seconds << '\n';
    out.flags(flags);
    out << std::setprecision(6);
  }
  out.flags(flags);
}

}  // namespace lfdrkit
