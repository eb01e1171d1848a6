#include "modo/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace modo {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::string_view problem,
                              std::uint64_t run_index) {
  // FNV-1a over the (master, problem, run) triple, then a splitmix64 finisher
  // to spread low-entropy inputs across the full 64-bit range.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix_byte((master_seed >> (8 * i)) & 0xff);
  for (const char c : problem) mix_byte(static_cast<unsigned char>(c));
  for (int i = 0; i < 8; ++i) mix_byte((run_index >> (8 * i)) & 0xff);
  return splitmix64(h);
}

BenchmarkSummary run_benchmark(const BenchConfig& config) {
  if (config.runs < 1) {
    throw std::invalid_argument("run_benchmark: runs must be >= 1");
  }
  if (config.problems.empty() || config.methods.empty()) {
    throw std::invalid_argument(
        "run_benchmark: need at least one problem and one method");
  }

  BenchmarkSummary summary;
  const std::string ls_name = to_string(config.linesearch);

  for (const std::string& problem_name : config.problems) {
    const Problem problem = make_problem(problem_name);

    // One start list per problem, shared verbatim by every method.
    std::vector<std::uint64_t> seeds(config.runs);
    std::vector<Vector> starts(config.runs);
    for (int r = 0; r < config.runs; ++r) {
      seeds[r] = derive_run_seed(config.master_seed, problem_name,
                                 static_cast<std::uint64_t>(r));
      std::mt19937_64 rng(seeds[r]);
      starts[r] = sample_initial_point(problem, rng);
    }

    for (const Method method : config.methods) {
      SolverConfig solver = config.solver;
      solver.method = method;
      solver.linesearch = config.linesearch;
      solver.record_iterates = false;

      SummaryRow row;
      row.problem = problem_name;
      row.solver = to_string(method);
      row.linesearch = ls_name;
      row.runs = config.runs;

      long converged = 0;
      for (int r = 0; r < config.runs; ++r) {
        const SolveTrace trace = solve(problem, starts[r], solver);
        row.avg_iter += trace.iterations;
        row.avg_feval += trace.fevals;
        row.avg_time_ms += trace.wall_ms;
        row.avg_stepsize += trace.mean_stepsize;
        if (trace.status == SolveStatus::critical) ++converged;
        if (trace.status == SolveStatus::linesearch_failure) {
          ++summary.failed_runs;
        }
        if (config.keep_records) {
          RunRecord rec;
          rec.problem = problem_name;
          rec.solver = row.solver;
          rec.linesearch = ls_name;
          rec.run_index = r;
          rec.seed = seeds[r];
          rec.iterations = trace.iterations;
          rec.fevals = trace.fevals;
          rec.wall_ms = trace.wall_ms;
          rec.mean_stepsize = trace.mean_stepsize;
          rec.status = trace.status;
          rec.final_x = trace.final_x;
          rec.final_values = trace.final_values;
          summary.records.push_back(std::move(rec));
        }
      }
      row.avg_iter /= config.runs;
      row.avg_feval /= config.runs;
      row.avg_time_ms /= config.runs;
      row.avg_stepsize /= config.runs;
      row.converged_fraction = static_cast<double>(converged) / config.runs;
      summary.rows.push_back(std::move(row));
    }
  }
  return summary;
}

std::string summary_to_csv(const BenchmarkSummary& summary) {
  std::ostringstream out;
  out << "problem,solver,linesearch,runs,avg_iter,avg_feval,avg_time_ms,"
         "avg_stepsize,converged_fraction\n";
  for (const SummaryRow& row : summary.rows) {
    out << row.problem << ',' << row.solver << ',' << row.linesearch << ','
        << row.runs << ',' << format_double(row.avg_iter) << ','
        << format_double(row.avg_feval) << ','
        << format_double(row.avg_time_ms) << ','
        << format_double(row.avg_stepsize) << ','
        << format_double(row.converged_fraction) << '\n';
  }
  return out.str();
}

std::string summary_to_markdown(const BenchmarkSummary& summary) {
  // Problems become rows; each (solver, linesearch) pair becomes a column
  // group.  First-appearance order is kept for both.
  std::vector<std::string> problems;
  std::vector<std::pair<std::string, std::string>> groups;
  bool mixed_ls = false;
  for (const SummaryRow& row : summary.rows) {
    if (std::find(problems.begin(), problems.end(), row.problem) ==
        problems.end()) {
      problems.push_back(row.problem);
    }
    const std::pair<std::string, std::string> key{row.solver, row.linesearch};
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) {
      groups.push_back(key);
    }
    if (row.linesearch != summary.rows.front().linesearch) mixed_ls = true;
  }

  const auto group_label = [&](const std::pair<std::string, std::string>& g) {
    return mixed_ls ? g.first + "/" + g.second : g.first;
  };

  std::ostringstream out;
  out << "| problem |";
  for (const auto& g : groups) {
    const std::string label = group_label(g);
    out << ' ' << label << " iter | " << label << " feval | " << label
        << " stepsize |";
  }
  out << "\n|---|";
  for (std::size_t i = 0; i < groups.size(); ++i) out << "---:|---:|---:|";
  out << '\n';

  std::vector<std::string> footnotes;
  for (const std::string& problem : problems) {
    out << "| " << problem << " |";
    for (const auto& g : groups) {
      const SummaryRow* cell = nullptr;
      for (const SummaryRow& row : summary.rows) {
        if (row.problem == problem && row.solver == g.first &&
            row.linesearch == g.second) {
          cell = &row;
          break;
        }
      }
      if (cell == nullptr) {
        out << " -- | -- | -- |";
        continue;
      }
      out << ' ' << format_fixed2(cell->avg_iter) << " | "
          << format_fixed2(cell->avg_feval) << " | "
          << format_fixed2(cell->avg_stepsize) << " |";
      if (cell->converged_fraction < 1.0) {
        const long missed = std::lround((1.0 - cell->converged_fraction) *
                                        cell->runs);
        footnotes.push_back(problem + "/" + group_label(g) + ": " +
                            std::to_string(missed) + "/" +
                            std::to_string(cell->runs));
      }
    }
    out << '\n';
  }
  if (!footnotes.empty()) {
    out << "\nRuns not converged within budget: ";
    for (std::size_t i = 0; i < footnotes.size(); ++i) {
      if (i > 0) out << "; ";
      out << footnotes[i];
    }
    out << '\n';
  }
  return out.str();
}

void write_summary(const BenchmarkSummary& summary, OutputFormat format,
                   const std::string& path) {
  const std::string text = format == OutputFormat::csv
                               ? summary_to_csv(summary)
                               : summary_to_markdown(summary);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_summary: cannot open '" + path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write_summary: failed writing '" + path + "'");
  }
}

void dump_trace(const Problem& problem, const SolverConfig& config,
                const Vector& x0, const std::string& path) {
  SolverConfig traced = config;
  traced.record_iterates = true;
  const SolveTrace trace = solve(problem, x0, traced);

  std::ostringstream out;
  out << "iter";
  for (int i = 1; i <= problem.n; ++i) out << ",x" << i;
  for (int i = 1; i <= problem.m; ++i) out << ",f" << i;
  out << ",dnorm,beta,trials,theta,status\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    const IterateRecord& row = trace.iterates[k];
    out << k;
    for (int i = 0; i < problem.n; ++i) out << ',' << format_double(row.x(i));
    for (int i = 0; i < problem.m; ++i) {
      out << ',' << format_double(row.values(i));
    }
    out << ',' << format_double(row.direction_norm) << ','
        << format_double(row.beta) << ',' << row.trials << ','
        << format_double(row.theta) << ',';
    if (k + 1 == trace.iterates.size()) out << to_string(trace.status);
    out << '\n';
  }

  if (path == "-") {
    std::cout << out.str();
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("dump_trace: cannot open '" + path + "'");
  }
  file << out.str();
  if (!file) {
    throw std::runtime_error("dump_trace: failed writing '" + path + "'");
  }
}

}  // namespace modo
