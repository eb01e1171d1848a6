#include "modo/solver.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "modo/dual.hpp"

namespace modo {

namespace {

void require_config(const Problem& problem, const Vector& x0,
                    const SolverConfig& cfg) {
  if (problem.n < 1 || problem.m < 1) {
    throw std::invalid_argument("solve: problem dimensions must be positive");
  }
  if (x0.size() != problem.n) {
    throw std::invalid_argument("solve: initial point has dimension " +
                                std::to_string(x0.size()) + ", expected " +
                                std::to_string(problem.n));
  }
  if (!(cfg.tol > 0.0)) {
    throw std::invalid_argument("solve: tol must be positive");
  }
  if (cfg.max_iters < 1) {
    throw std::invalid_argument("solve: max_iters must be at least 1");
  }
  if (!(cfg.alpha_min > 0.0) || !(cfg.alpha_max >= cfg.alpha_min)) {
    throw std::invalid_argument("solve: need 0 < alpha_min <= alpha_max");
  }
}

// Steps shorter than this (relative to the iterate) carry no curvature
// information; the previous coefficients are reused instead.
constexpr double kZeroStepTol = 1e-16;

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::sdmo: return "sdmo";
    case Method::bbmo: return "bbmo";
    case Method::bbdmo: return "bbdmo";
  }
  return "?";
}

std::string to_string(LineSearchKind k) {
  switch (k) {
    case LineSearchKind::armijo: return "armijo";
    case LineSearchKind::max_nonmonotone: return "max";
    case LineSearchKind::avg_nonmonotone: return "avg";
  }
  return "?";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::critical: return "critical";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::linesearch_failure: return "linesearch_failure";
  }
  return "?";
}

SolveTrace solve(const Problem& problem, const Vector& x0,
                 const SolverConfig& cfg) {
  require_config(problem, x0, cfg);
  const auto t_start = std::chrono::steady_clock::now();

  SolveTrace trace;
  EvalCounter counter;
  EvalCounter initial_counter;  // the starting evaluation is not billed
  Vector x = x0;
  Vector fx = evaluate(problem, x0, initial_counter);
  Matrix jac = jacobian(problem, x);

  std::optional<Vector> warm;
  Vector alphas = Vector::Ones(problem.m);
  Vector prev_x;
  Vector prev_d;
  Matrix prev_jac;
  double bbmo_coeff = 1.0;

  NonmonotoneState nm;
  nm.history.push_back(fx);
  nm.q = 1.0;
  nm.c = fx;

  double beta_sum = 0.0;

  const auto push_row = [&](double dnorm, double beta, int trials,
                            double theta) {
    if (!cfg.record_iterates) return;
    IterateRecord row;
    row.x = x;
    row.values = fx;
    row.direction_norm = dnorm;
    row.beta = beta;
    row.trials = trials;
    row.theta = theta;
    trace.iterates.push_back(std::move(row));
  };

  for (int k = 0;; ++k) {
    Matrix dual_rows = jac;
    if (cfg.method == Method::bbdmo && k >= 1) {
      const Vector s = x - prev_x;
      if (s.norm() > kZeroStepTol * std::max(1.0, x.norm())) {
        alphas = update_alphas(s, jac - prev_jac, cfg.alpha_min, cfg.alpha_max);
      }
      dual_rows = scale_gradients(jac, alphas);
    }

    DualSolution dual;
    try {
      dual = solve_dual(dual_rows, warm);
    } catch (const DualNonConvergence& e) {
      // The relative certificate loses meaning as the direction collapses:
      // a direction already below the stopping tolerance is accepted as
      // critical; anything larger is a genuine subproblem failure.
      if (!(e.best.direction.norm() < cfg.tol)) throw;
      dual = e.best;
    }
    warm = dual.lambda;
    double dnorm = dual.direction.norm();

    // Under a scaled subproblem the direction can come up short one step
    // before the true steepest-descent direction does (curvature beyond
    // alpha_max collapses the scaled direction at points that are not yet
    // critical), so criticality is only declared once the unscaled
    // certificate agrees.  When it disagrees, its own direction is the
    // productive one — the collapsed direction's slopes sit at roundoff
    // level — so the iteration steps along the unscaled direction instead.
    bool certified = dnorm < cfg.tol;
    if (certified && cfg.method == Method::bbdmo && k >= 1) {
      DualSolution plain;
      try {
        plain = solve_dual(jac, warm);
      } catch (const DualNonConvergence& e) {
        plain = e.best;  // the norm test below decides either way
      }
      certified = plain.direction.norm() < cfg.tol;
      if (!certified) {
        dual = std::move(plain);
        warm = dual.lambda;
        dnorm = dual.direction.norm();
      }
    }
    if (certified || k >= cfg.max_iters) {
      trace.status =
          certified ? SolveStatus::critical : SolveStatus::max_iters;
      trace.iterations = k;
      push_row(dnorm, 0.0, 0, dual.theta);
      break;
    }

    // Slopes always use the true gradients, also under a scaled subproblem.
    const Vector slopes = jac * dual.direction;

    LineSearchParams ls = cfg.line_search;
    if (cfg.method == Method::bbmo && k >= 1) {
      const Vector s = x - prev_x;
      if (s.norm() > kZeroStepTol * std::max(1.0, x.norm())) {
        const Vector y = dual.direction - prev_d;
        bbmo_coeff =
            safeguarded_bb_coefficient(s, y, cfg.alpha_min, cfg.alpha_max);
      }
      ls.initial_beta = 1.0 / bbmo_coeff;
    }

    const VectorEvaluator f = [&](const Vector& xt) {
      return evaluate(problem, xt, counter);
    };
    LineSearchOutcome out;
    bool failed = false;
    try {
      switch (cfg.linesearch) {
        case LineSearchKind::armijo:
          out = armijo(f, x, fx, dual.direction, slopes, ls);
          break;
        case LineSearchKind::max_nonmonotone:
          out = max_nonmonotone(f, x, nm, dual.direction, slopes, ls);
          break;
        case LineSearchKind::avg_nonmonotone: {
          AvgSearchResult r =
              avg_nonmonotone(f, x, fx, nm.q, nm.c, dual.direction, slopes, ls);
          nm.q = r.q;
          nm.c = std::move(r.c);
          out = std::move(r.outcome);
          break;
        }
      }
    } catch (const LineSearchFailure& e) {
      trace.status = SolveStatus::linesearch_failure;
      trace.iterations = k;
      push_row(dnorm, 0.0, e.trials, dual.theta);
      failed = true;
    }
    if (failed) break;

    push_row(dnorm, out.beta, out.trials, dual.theta);
    beta_sum += out.beta;

    prev_x = std::move(x);
    prev_d = dual.direction;
    prev_jac = std::move(jac);
    x = std::move(out.accepted_point);
    fx = std::move(out.accepted_values);
    jac = jacobian(problem, x);
    push_history(nm, fx, ls.window);
  }

  trace.fevals = counter.fevals;
  trace.final_x = x;
  trace.final_values = fx;
  trace.mean_stepsize =
      trace.iterations > 0 ? beta_sum / trace.iterations : 0.0;
  trace.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
  return trace;
}

SolveTrace run_sdmo(const Problem& problem, const Vector& x0,
                    SolverConfig config) {
  config.method = Method::sdmo;
  return solve(problem, x0, config);
}

SolveTrace run_bbmo(const Problem& problem, const Vector& x0,
                    SolverConfig config) {
  config.method = Method::bbmo;
  return solve(problem, x0, config);
}

SolveTrace run_bbdmo(const Problem& problem, const Vector& x0,
                     SolverConfig config) {
  config.method = Method::bbdmo;
  return solve(problem, x0, config);
}

CriticalityReport criticality_report(const Problem& problem, const Vector& x,
                                     double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("criticality_report: tol must be positive");
  }
  const Matrix jac = jacobian(problem, x);
  DualSolution dual;
  try {
    dual = solve_dual(jac);
  } catch (const DualNonConvergence& e) {
    if (!(e.best.direction.norm() < tol)) throw;
    dual = e.best;
  }
  CriticalityReport report;
  report.direction_norm = dual.direction.norm();
  report.theta = dual.theta;
  report.lambda = dual.lambda;
  report.critical = report.direction_norm < tol;
  return report;
}

}  // namespace modo
