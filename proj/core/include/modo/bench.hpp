#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modo/problems.hpp"
#include "modo/solver.hpp"

namespace modo {

/// Outcome of a single seeded solver run.
struct RunRecord {
  std::string problem;
  std::string solver;
  std::string linesearch;
  int run_index = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  long fevals = 0;
  double wall_ms = 0.0;
  double mean_stepsize = 0.0;
  SolveStatus status = SolveStatus::max_iters;
  Vector final_x;
  Vector final_values;
};

/// Aggregates of one (problem, solver, linesearch) cell.
struct SummaryRow {
  std::string problem;
  std::string solver;
  std::string linesearch;
  int runs = 0;
  double avg_iter = 0.0;
  double avg_feval = 0.0;
  double avg_time_ms = 0.0;
  double avg_stepsize = 0.0;
  double converged_fraction = 0.0;
};

struct BenchmarkSummary {
  std::vector<SummaryRow> rows;
  std::vector<RunRecord> records;  ///< per-run detail, kept when requested
  int failed_runs = 0;             ///< runs that ended in linesearch_failure
};

struct BenchConfig {
  std::vector<std::string> problems;
  std::vector<Method> methods;
  LineSearchKind linesearch = LineSearchKind::armijo;
  int runs = 200;
  std::uint64_t master_seed = 42;
  SolverConfig solver;      ///< template; method is overwritten per cell
  bool keep_records = false;
};

enum class OutputFormat { csv, markdown };

/// Collision-resistant mix of (master_seed, problem, run_index).  The solver
/// never participates: every solver sees the same initial point for a given
/// (problem, run) pair.
std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::string_view problem,
                              std::uint64_t run_index);

/// Runs every (problem, method) cell of the config: `runs` seeded starts per
/// cell, identical starts across methods.  Runs that fail their line search
/// are recorded with their status, never dropped.
BenchmarkSummary run_benchmark(const BenchConfig& config);

/// CSV with one row per summary cell, full float precision
/// (shortest-round-trip formatting).
std::string summary_to_csv(const BenchmarkSummary& summary);

/// Markdown table, one row per problem and one iter/feval/stepsize column
/// group per solver, 2-decimal formatting.  Wall time is deliberately
/// omitted: it is the one hardware-bound column and would break
/// byte-reproducibility of the rendered table.
std::string summary_to_markdown(const BenchmarkSummary& summary);

/// Writes the chosen rendering to `path` ("-" = stdout).
/// Throws std::runtime_error when the file cannot be written.
void write_summary(const BenchmarkSummary& summary, OutputFormat format,
                   const std::string& path);

/// Runs one seeded solve and writes its full iterate trace as CSV
/// (iter, x..., F..., |d|, beta, theta, status on the final row).
void dump_trace(const Problem& problem, const SolverConfig& config,
                const Vector& x0, const std::string& path);

}  // namespace modo
