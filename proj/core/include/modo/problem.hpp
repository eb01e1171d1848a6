#pragma once

#include <functional>
#include <optional>
#include <string>

#include "modo/types.hpp"

namespace modo {

/// A smooth unconstrained multiobjective problem F: R^n -> R^m with an
/// analytic Jacobian.  The box [lower, upper] only delimits where initial
/// points are sampled; iterates are free to leave it.
///
/// Oracles may return non-finite entries (NaN/Inf) outside a problem's
/// natural domain.  Non-finite values are data, not errors: callers test
/// finiteness and react (line searches reject such trial points).
struct Problem {
  std::string name;
  int n = 0;  ///< number of variables
  int m = 0;  ///< number of objectives
  Vector lower;
  Vector upper;
  std::function<Vector(const Vector&)> value_oracle;     ///< F(x), length m
  std::function<Matrix(const Vector&)> jacobian_oracle;  ///< JF(x), m x n; row i = grad F_i(x)
};

/// One oracle evaluation bundled with the point it was taken at.
struct Evaluation {
  Vector x;
  Vector values;
  std::optional<Matrix> jacobian;

  bool finite() const { return values.allFinite(); }
};

/// Evaluates F(x) and increments `counter` by exactly one.
/// Throws std::invalid_argument if x has the wrong dimension.
Vector evaluate(const Problem& problem, const Vector& x, EvalCounter& counter);

/// Evaluates JF(x).  Never touches an evaluation counter: gradient work is
/// tracked separately from objective-vector work.
Matrix jacobian(const Problem& problem, const Vector& x);

/// Central-difference consistency check of the analytic Jacobian.
/// Returns max_{i,j} |fd_ij - J_ij| / max(1, |J_ij|), or NaN if any
/// evaluation involved is non-finite.
double check_jacobian_fd(const Problem& problem, const Vector& x, double h);

}  // namespace modo
