#pragma once

#include <string>
#include <vector>

#include "modo/bb.hpp"
#include "modo/line_search.hpp"
#include "modo/problem.hpp"
#include "modo/types.hpp"

namespace modo {

enum class Method { sdmo, bbmo, bbdmo };
enum class LineSearchKind { armijo, max_nonmonotone, avg_nonmonotone };
enum class SolveStatus { critical, max_iters, linesearch_failure };

std::string to_string(Method m);
std::string to_string(LineSearchKind k);
std::string to_string(SolveStatus s);

struct SolverConfig {
  Method method = Method::sdmo;
  LineSearchKind linesearch = LineSearchKind::armijo;
  double tol = 1e-4;   ///< stop when |d| drops below this; bbdmo additionally
                       ///< requires the unscaled |d| at the same point
  int max_iters = 500;
  LineSearchParams line_search;
  double alpha_min = kDefaultAlphaMin;
  double alpha_max = kDefaultAlphaMax;
  bool record_iterates = true;  ///< keep the per-iteration trace rows
};

/// One row of a solve trace.  For rows describing completed iterations,
/// (beta, trials) belong to the step taken FROM x; the final row carries the
/// state at termination with beta = 0 and trials = 0, except after a failed
/// line search, where trials records the wasted evaluations.
struct IterateRecord {
  Vector x;
  Vector values;
  double direction_norm = 0.0;
  double beta = 0.0;
  int trials = 0;
  double theta = 0.0;  ///< optimal value of the subproblem actually solved
};

struct SolveTrace {
  std::vector<IterateRecord> iterates;  ///< empty unless record_iterates
  SolveStatus status = SolveStatus::max_iters;
  int iterations = 0;       ///< accepted steps
  long fevals = 0;          ///< objective-vector evaluations (initial F(x0) excluded)
  double wall_ms = 0.0;
  double mean_stepsize = 0.0;  ///< mean accepted beta; 0 when no step was taken
  Vector final_x;
  Vector final_values;
};

/// Runs the configured method from x0.  Line-search failure is reported via
/// status, never thrown.  Throws std::invalid_argument on dimension or
/// parameter violations.
SolveTrace solve(const Problem& problem, const Vector& x0,
                 const SolverConfig& config);

/// Convenience wrappers that pin config.method.
SolveTrace run_sdmo(const Problem& problem, const Vector& x0,
                    SolverConfig config = {});
SolveTrace run_bbmo(const Problem& problem, const Vector& x0,
                    SolverConfig config = {});
SolveTrace run_bbdmo(const Problem& problem, const Vector& x0,
                     SolverConfig config = {});

/// Solves the unscaled subproblem at x and reports how critical the point is.
struct CriticalityReport {
  double direction_norm = 0.0;
  double theta = 0.0;
  Vector lambda;
  bool critical = false;
};

CriticalityReport criticality_report(const Problem& problem, const Vector& x,
                                     double tol);

}  // namespace modo
