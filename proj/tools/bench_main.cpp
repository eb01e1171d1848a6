// Benchmark harness for the multiobjective descent solvers.
//
//   bench run    -- seeded multi-run summaries (CSV or markdown)
//   bench trace  -- single-run iterate trajectory as CSV
//   bench table  -- full 18-problem x 3-solver markdown table
//
// Exit codes: 0 success, 1 bad arguments, 2 I/O or internal failure,
// 3 benchmark completed but one or more runs failed (summary still written).

#include <cstdint>
#include <exception>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modo/bench.hpp"
#include "modo/problems.hpp"
#include "modo/solver.hpp"

namespace {

struct CliOptions {
  std::string problem = "all";
  std::string solver = "all";
  std::string linesearch = "armijo";
  int runs = 200;
  std::uint64_t seed = 42;
  int max_iters = 500;
  double tol = 1e-4;
  double sigma = 0.1;
  double gamma = 0.5;
  int window = 10;
  double eta = 0.8;
  double alpha_min = modo::kDefaultAlphaMin;
  double alpha_max = modo::kDefaultAlphaMax;
  std::string out = "-";
  std::string format = "csv";
};

std::vector<std::string> parse_problems(const std::string& name) {
  if (name == "all") return modo::problem_names();
  return {name};
}

std::vector<modo::Method> parse_methods(const std::string& name) {
  if (name == "all") {
    return {modo::Method::sdmo, modo::Method::bbmo, modo::Method::bbdmo};
  }
  if (name == "sdmo") return {modo::Method::sdmo};
  if (name == "bbmo") return {modo::Method::bbmo};
  if (name == "bbdmo") return {modo::Method::bbdmo};
  throw std::invalid_argument("unknown solver '" + name +
                              "' (expected sdmo|bbmo|bbdmo|all)");
}

modo::LineSearchKind parse_linesearch(const std::string& name) {
  if (name == "armijo") return modo::LineSearchKind::armijo;
  if (name == "max") return modo::LineSearchKind::max_nonmonotone;
  if (name == "avg") return modo::LineSearchKind::avg_nonmonotone;
  throw std::invalid_argument("unknown line search '" + name +
                              "' (expected armijo|max|avg)");
}

modo::OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return modo::OutputFormat::csv;
  if (name == "md" || name == "markdown") return modo::OutputFormat::markdown;
  throw std::invalid_argument("unknown format '" + name +
                              "' (expected csv|md)");
}

modo::SolverConfig solver_config(const CliOptions& opt) {
  modo::SolverConfig config;
  config.linesearch = parse_linesearch(opt.linesearch);
  config.tol = opt.tol;
  config.max_iters = opt.max_iters;
  config.line_search.sigma = opt.sigma;
  config.line_search.gamma = opt.gamma;
  config.line_search.window = opt.window;
  config.line_search.eta = opt.eta;
  config.alpha_min = opt.alpha_min;
  config.alpha_max = opt.alpha_max;
  return config;
}

void add_tuning_flags(CLI::App& cmd, CliOptions& opt) {
  cmd.add_option("--max-iter,--max_iter", opt.max_iters,
                 "Iteration cap per run")
      ->capture_default_str();
  cmd.add_option("--tol", opt.tol, "Criticality tolerance on |d|")
      ->capture_default_str();
  cmd.add_option("--sigma", opt.sigma, "Sufficient-decrease fraction")
      ->capture_default_str();
  cmd.add_option("--gamma", opt.gamma, "Backtracking shrink factor")
      ->capture_default_str();
  cmd.add_option("--M", opt.window, "Max-type nonmonotone window")
      ->capture_default_str();
  cmd.add_option("--eta", opt.eta, "Average-type nonmonotone decay")
      ->capture_default_str();
  cmd.add_option("--alpha-min,--alpha_min", opt.alpha_min,
                 "Lower safeguard for BB coefficients")
      ->capture_default_str();
  cmd.add_option("--alpha-max,--alpha_max", opt.alpha_max,
                 "Upper safeguard for BB coefficients")
      ->capture_default_str();
}

int run_summary_command(const CliOptions& opt) {
  modo::BenchConfig config;
  config.problems = parse_problems(opt.problem);
  config.methods = parse_methods(opt.solver);
  config.linesearch = parse_linesearch(opt.linesearch);
  config.runs = opt.runs;
  config.master_seed = opt.seed;
  config.solver = solver_config(opt);

  const modo::BenchmarkSummary summary = modo::run_benchmark(config);
  modo::write_summary(summary, parse_format(opt.format), opt.out);
  if (summary.failed_runs > 0) {
    std::cerr << "warning: " << summary.failed_runs
              << " run(s) ended in line-search failure\n";
    return 3;
  }
  return 0;
}

int run_trace_command(const CliOptions& opt) {
  const modo::Problem problem = modo::make_problem(opt.problem);
  const std::vector<modo::Method> methods = parse_methods(opt.solver);
  if (methods.size() != 1) {
    throw std::invalid_argument("trace needs exactly one solver");
  }
  modo::SolverConfig config = solver_config(opt);
  config.method = methods.front();

  // The trace starts from the same point as run 0 of `bench run` with the
  // same master seed, so a summary cell can be replayed exactly.
  std::mt19937_64 rng(modo::derive_run_seed(opt.seed, problem.name, 0));
  const modo::Vector x0 = modo::sample_initial_point(problem, rng);
  modo::dump_trace(problem, config, x0, opt.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Benchmark harness for multiobjective first-order descent solvers"};
  app.require_subcommand(1);

  CliOptions run_opt;
  CLI::App* run = app.add_subcommand(
      "run", "Seeded multi-run benchmark over (problem, solver) cells");
  run->add_option("--problem", run_opt.problem,
                  "Problem name or 'all'")
      ->capture_default_str();
  run->add_option("--solver", run_opt.solver, "sdmo|bbmo|bbdmo|all")
      ->capture_default_str();
  run->add_option("--linesearch", run_opt.linesearch, "armijo|max|avg")
      ->capture_default_str();
  run->add_option("--runs", run_opt.runs, "Seeded starts per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--seed", run_opt.seed, "Master seed")
      ->capture_default_str();
  run->add_option("--out", run_opt.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  run->add_option("--format", run_opt.format, "csv|md")
      ->capture_default_str();
  add_tuning_flags(*run, run_opt);
  run->set_config("--config", "", "Read key=value defaults from a file");

  CliOptions trace_opt;
  trace_opt.solver = "sdmo";
  CLI::App* trace = app.add_subcommand(
      "trace", "Dump one seeded run's iterate trajectory as CSV");
  trace->add_option("--problem", trace_opt.problem, "Problem name")
      ->required();
  trace->add_option("--solver", trace_opt.solver, "sdmo|bbmo|bbdmo")
      ->capture_default_str();
  trace->add_option("--linesearch", trace_opt.linesearch, "armijo|max|avg")
      ->capture_default_str();
  trace->add_option("--seed", trace_opt.seed,
                    "Master seed; the trace replays run 0 of `bench run`")
      ->capture_default_str();
  trace->add_option("--out", trace_opt.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  add_tuning_flags(*trace, trace_opt);
  trace->set_config("--config", "", "Read key=value defaults from a file");

  CliOptions table_opt;
  table_opt.format = "md";
  CLI::App* table = app.add_subcommand(
      "table", "Render the full problems-by-solvers markdown table");
  table->add_option("--linesearch", table_opt.linesearch, "armijo|max|avg")
      ->capture_default_str();
  table->add_option("--runs", table_opt.runs, "Seeded starts per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table->add_option("--seed", table_opt.seed, "Master seed")
      ->capture_default_str();
  table->add_option("--out", table_opt.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  table->add_option("--format", table_opt.format, "md|csv")
      ->capture_default_str();
  add_tuning_flags(*table, table_opt);
  table->set_config("--config", "", "Read key=value defaults from a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return run_summary_command(run_opt);
    if (trace->parsed()) return run_trace_command(trace_opt);
    if (table->parsed()) {
      table_opt.problem = "all";
      table_opt.solver = "all";
      return run_summary_command(table_opt);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
