#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lfdrkit/benchmark.hpp"
#include "lfdrkit/error.hpp"
#include "lfdrkit/fit.hpp"
#include "lfdrkit/simulation.hpp"

namespace lfdrkit::cli {
namespace {

struct FitArgs {
  std::string input;
  std::string column;
  std::string output_prefix = "lfdrkit_fit";
  std::string method = "rwk";
  std::string kernel;
  std::string bandwidth = "silverman";
  std::string theta = "bootstrap";
  double epsilon = 1e-5;
  int max_iter = 500;
  std::size_t grid_size = 1024;
  int bootstrap = kDefaultBootstrapReplicates;
  std::uint64_t seed = 0;
};

struct SimulateArgs {
  int model = 1;
  double theta = 0.65;
  std::optional<double> rho;
  std::optional<double> mu;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string output_prefix = "lfdrkit_sim";
};

struct BenchArgs {
  std::vector<int> models = {1, 2, 3};
  std::vector<double> thetas = {0.65, 0.85};
  std::vector<std::size_t> sizes = {500, 1000, 2000, 5000};
  std::vector<std::string> methods = {"rwk", "kerfdr", "msl"};
  std::optional<double> rho;
  std::optional<double> mu;
  int repeats = 100;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  double epsilon = 1e-5;
  int max_iter = 500;
  std::size_t grid_size = 1024;
  int bootstrap = kDefaultBootstrapReplicates;
  std::string output_prefix = "lfdrkit_bench";
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= line.size(); ++k) {
    if (k == line.size() || line[k] == ',') {
      fields.push_back(trim(line.substr(start, k - start)));
      start = k + 1;
    }
  }
  return fields;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

/// Reads one p-value per line, or the named column of a CSV with a header.
/// Blank lines and lines starting with '#' are skipped. Every bad line is
/// reported; returns nullopt if there was any.
std::optional<std::vector<double>> read_p_values(const std::string& path, const std::string& column,
                                                 std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open input file '" << path << "'\n";
    return std::nullopt;
  }
  std::vector<double> values;
  std::size_t bad = 0;
  std::optional<std::size_t> col;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::string_view field = text;
    if (!column.empty()) {
      const auto fields = split_csv(text);
      if (!col) {
        for (std::size_t k = 0; k < fields.size(); ++k)
          if (fields[k] == column) col = k;
        if (!col) {
          err << "error: " << path << ": no column named '" << column << "' in header (line " << number << ")\n";
          return std::nullopt;
        }
        continue;
      }
      if (*col >= fields.size()) {
        if (++bad <= 20) err << "error: " << path << ":" << number << ": missing column '" << column << "'\n";
        continue;
      }
      field = fields[*col];
    }
    const auto v = parse_double(field);
    if (!v) {
      if (++bad <= 20) err << "error: " << path << ":" << number << ": not a number: '" << field << "'\n";
    } else if (!(*v >= 0.0 && *v <= 1.0)) {
      if (++bad <= 20) err << "error: " << path << ":" << number << ": p-value out of [0, 1]: " << field << '\n';
    } else {
      values.push_back(*v);
    }
  }
  if (bad > 20) err << "error: " << bad - 20 << " more bad lines not shown\n";
  if (bad > 0) return std::nullopt;
  if (values.empty()) {
    err << "error: " << path << ": no p-values found\n";
    return std::nullopt;
  }
  return values;
}

bool open_output(const std::string& path, std::ofstream& file, std::ostream& err) {
  file.open(path);
  if (!file) err << "error: cannot write '" << path << "'\n";
  return static_cast<bool>(file);
}

/// Settings that need more than a CLI11 type check. Throws CLI::ValidationError.
struct FitPlan {
  FitOptions options;
};

FitPlan plan_fit(const FitArgs& a) {
  FitPlan plan;
  auto& o = plan.options;
  try {
    o.method = parse_method(a.method);
    if (!a.kernel.empty()) o.kernel = KernelSpec(parse_kernel_family(a.kernel));
  } catch (const Error& e) {
    throw CLI::ValidationError(e.what());
  }
  if (o.method == Method::msl && o.kernel && o.kernel->compact())
    throw CLI::ValidationError("--kernel", "msl requires the gaussian kernel, got " + a.kernel);
  if (a.bandwidth != "silverman") {
    const auto h = parse_double(a.bandwidth);
    if (!h || !(*h > 0.0) || !std::isfinite(*h))
      throw CLI::ValidationError("--bandwidth", "expected a positive number or 'silverman', got " + a.bandwidth);
    o.bandwidth = *h;
  }
  if (a.theta != "bootstrap") {
    const auto t = parse_double(a.theta);
    if (!t || !(*t >= 0.0 && *t <= 1.0))
      throw CLI::ValidationError("--theta", "expected a number in [0, 1] or 'bootstrap', got " + a.theta);
    o.theta = *t;
  }
  o.seed = a.seed;
  o.bootstrap_replicates = a.bootstrap;
  o.iterative.epsilon = a.epsilon;
  o.iterative.max_iterations = a.max_iter;
  o.iterative.grid_size = a.grid_size;
  return plan;
}

nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

int cmd_fit(const FitArgs& a, const FitPlan& plan, std::ostream& out, std::ostream& err) {
  const auto values = read_p_values(a.input, a.column, err);
  if (!values) return kUsage;
  const PValueSample sample(*values);

  FitResult result = [&] {
    try {
      return fit(sample, plan.options);
    } catch (const Error& e) {
      err << "error: estimation failed (" << to_string(e.code()) << "): " << e.what() << '\n';
      throw;
    }
  }();

  const bool iterative = result.trace.has_value();
  nlohmann::json summary = {
      {"theta_hat", result.theta.value},
      {"lambda", finite_or_null(result.theta.lambda)},
      {"method", to_string(result.method)},
      {"converged", iterative ? nlohmann::json(result.trace->converged) : nlohmann::json(nullptr)},
      {"iterations", iterative ? result.trace->iterations_used : 0},
      {"kernel", to_string(result.kernel.family())},
      {"bandwidth", result.bandwidth.value()},
      {"n", sample.size()},
      {"null_only", result.null_only},
  };
  std::ofstream json_file;
  std::ofstream csv_file;
  if (!open_output(a.output_prefix + ".json", json_file, err)) return kUsage;
  if (!open_output(a.output_prefix + ".csv", csv_file, err)) return kUsage;
  json_file << summary.dump(2) << '\n';
  csv_file << "p_value,f_hat,lfdr_hat,fdr_hat\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    csv_file << format_number(sample[i]) << ',' << format_number(result.f_hat[i]) << ','
             << format_number(result.lfdr[i]) << ',' << format_number(result.fdr[i]) << '\n';
  }
  out << "method " << to_string(result.method) << ", n = " << sample.size() << ", theta_hat = "
      << format_number(result.theta.value);
  if (iterative)
    out << ", " << result.trace->iterations_used << " iterations"
        << (result.trace->converged ? "" : " (not converged)");
  out << "\nwrote " << a.output_prefix << ".json and " << a.output_prefix << ".csv\n";
  return kOk;
}

SimulationModel make_model(int number, double theta, std::optional<double> rho, std::optional<double> mu) {
  SimulationModel m = SimulationModel::standard(model_from_number(number), theta);
  if (rho) m.rho = *rho;
  if (mu) m.mu = *mu;
  validate(m);
  return m;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  SimulationModel model;
  try {
    model = make_model(a.model, a.theta, a.rho, a.mu);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const auto sim = generate_sample(model, a.n, a.seed);
  const std::string path = a.output_prefix + ".csv";
  std::ofstream file;
  if (!open_output(path, file, err)) return kUsage;
  file << "p_value,z_label,true_f,true_lfdr\n";
  for (std::size_t i = 0; i < a.n; ++i) {
    const double p = sim.p_values[i];
    file << format_number(p) << ',' << sim.labels[i] << ',' << format_number(true_f(model, p)) << ','
         << format_number(true_lfdr(model, p)) << '\n';
  }
  out << "model " << a.model << " (" << to_string(model.kind) << "), theta = " << format_number(a.theta)
      << ", n = " << a.n << "\nwrote " << path << '\n';
  return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchmarkConfig config;
  try {
    config.models.clear();
    for (int m : a.models) config.models.push_back(make_model(m, a.thetas.empty() ? 0.5 : a.thetas.front(), a.rho, a.mu));
    config.methods.clear();
    for (const auto& m : a.methods) config.methods.push_back(parse_method(m));
    config.thetas = a.thetas;
    config.sample_sizes = a.sizes;
    config.repeats = a.repeats;
    config.master_seed = a.master_seed;
    config.threads = a.threads;
    config.bootstrap_replicates = a.bootstrap;
    config.iterative.epsilon = a.epsilon;
    config.iterative.max_iterations = a.max_iter;
    config.iterative.grid_size = a.grid_size;
    validate(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const BenchmarkReport report = run_benchmark(config);
  std::ofstream csv_file;
  std::ofstream json_file;
  if (!open_output(a.output_prefix + ".csv", csv_file, err)) return kUsage;
  if (!open_output(a.output_prefix + ".json", json_file, err)) return kUsage;
  write_csv(csv_file, report);
  json_file << to_json(report) << '\n';
  print_summary(out, report);
  out << "wrote " << a.output_prefix << ".csv and " << a.output_prefix << ".json\n";
  return kOk;
}

void add_iteration_flags(CLI::App* cmd, double& epsilon, int& max_iter, std::size_t& grid_size, int& bootstrap) {
  cmd->add_option("--epsilon", epsilon, "Relative weight-change tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", max_iter, "Iteration cap for kerfdr and msl")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid-size", grid_size, "Quadrature grid for msl")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--bootstrap", bootstrap, "Bootstrap replicates for theta")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local FDR and alternative-density estimation for p-values", "lfdrkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lfdrkit 1.0");

  const std::vector<std::string> kernels = {"rectangular", "triangular", "epanechnikov", "gaussian"};
  const std::vector<std::string> methods = {"naive", "rwk", "kerfdr", "msl"};

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate theta, f and lFDR for a file of p-values");
  fit_cmd->add_option("--input", fa.input, "One p-value per line, or a CSV with --column")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--column", fa.column, "Column name when the input is a CSV with a header");
  fit_cmd->add_option("--output-prefix", fa.output_prefix, "Writes <prefix>.json and <prefix>.csv")
      ->capture_default_str();
  fit_cmd->add_option("--method", fa.method)->capture_default_str()->check(CLI::IsMember(methods));
  fit_cmd->add_option("--kernel", fa.kernel, "Default: gaussian for msl, triangular otherwise")
      ->check(CLI::IsMember(kernels));
  fit_cmd->add_option("--bandwidth", fa.bandwidth, "<float|silverman>")->capture_default_str();
  fit_cmd->add_option("--theta", fa.theta, "<float|bootstrap>")->capture_default_str();
  fit_cmd->add_option("--seed", fa.seed, "Seed for the bootstrap and the initial weights")->capture_default_str();
  add_iteration_flags(fit_cmd, fa.epsilon, fa.max_iter, fa.grid_size, fa.bootstrap);

  SimulateArgs sa;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw p-values from one of the simulation models");
  sim_cmd->add_option("--model", sa.model, "1: beta tail, 2: gaussian shift, 3: laplace shift")
      ->capture_default_str()
      ->check(CLI::IsMember({1, 2, 3}));
  sim_cmd->add_option("--theta", sa.theta, "Null proportion")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--rho", sa.rho, "Model 1 shape (default 4)");
  sim_cmd->add_option("--mu", sa.mu, "Models 2 and 3 shift (defaults 2 and 1)");
  sim_cmd->add_option("--n", sa.n, "Sample size")->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sa.seed)->capture_default_str();
  sim_cmd->add_option("--output-prefix", sa.output_prefix, "Writes <prefix>.csv")->capture_default_str();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo comparison of the estimators");
  bench_cmd->add_option("--model", ba.models, "Models to simulate")
      ->capture_default_str()
      ->delimiter(',')
      ->check(CLI::IsMember({1, 2, 3}));
  bench_cmd->add_option("--theta", ba.thetas, "Null proportions")
      ->capture_default_str()
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--n", ba.sizes, "Sample sizes")->capture_default_str()->delimiter(',');
  bench_cmd->add_option("--method", ba.methods, "Estimators")
      ->capture_default_str()
      ->delimiter(',')
      ->check(CLI::IsMember(methods));
  bench_cmd->add_option("--rho", ba.rho, "Model 1 shape (default 4)");
  bench_cmd->add_option("--mu", ba.mu, "Shift for models 2 and 3 (defaults 2 and 1)");
  bench_cmd->add_option("--S", ba.repeats, "Replicates per cell")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--master-seed", ba.master_seed)->capture_default_str();
  bench_cmd->add_option("--threads", ba.threads, "Worker threads (0: all cores)")->capture_default_str();
  bench_cmd->add_option("--output-prefix", ba.output_prefix, "Writes <prefix>.csv and <prefix>.json")
      ->capture_default_str();
  add_iteration_flags(bench_cmd, ba.epsilon, ba.max_iter, ba.grid_size, ba.bootstrap);

  FitPlan fit_plan;
  std::vector<const char*> argv;
  argv.push_back("lfdrkit");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (fit_cmd->parsed()) fit_plan = plan_fit(fa);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fa, fit_plan, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sa, out, err);
    return cmd_bench(ba, out, err);
  } catch (const Error&) {
    return kEstimation;
  }
}

}  // namespace lfdrkit::cli
