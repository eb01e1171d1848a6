#include "modo/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace modo {

namespace {

void require_point_dim(const Problem& problem, const Vector& x,
                       const char* where) {
  if (x.size() != problem.n) {
    throw std::invalid_argument(std::string(where) + ": point has dimension " +
                                std::to_string(x.size()) + ", problem '" +
                                problem.name + "' expects " +
                                std::to_string(problem.n));
  }
}

}  // namespace

Vector evaluate(const Problem& problem, const Vector& x, EvalCounter& counter) {
  require_point_dim(problem, x, "evaluate");
  Vector values = problem.value_oracle(x);
  if (values.size() != problem.m) {
    throw std::invalid_argument("evaluate: oracle of '" + problem.name +
                                "' returned " + std::to_string(values.size()) +
                                " values, expected " +
                                std::to_string(problem.m));
  }
  ++counter.fevals;
  return values;
}

Matrix jacobian(const Problem& problem, const Vector& x) {
  require_point_dim(problem, x, "jacobian");
  Matrix jac = problem.jacobian_oracle(x);
  if (jac.rows() != problem.m || jac.cols() != problem.n) {
    throw std::invalid_argument(
        "jacobian: oracle of '" + problem.name + "' returned " +
        std::to_string(jac.rows()) + "x" + std::to_string(jac.cols()) +
        ", expected " + std::to_string(problem.m) + "x" +
        std::to_string(problem.n));
  }
  return jac;
}

double check_jacobian_fd(const Problem& problem, const Vector& x, double h) {
  require_point_dim(problem, x, "check_jacobian_fd");
  if (!(h > 0.0)) {
    throw std::invalid_argument("check_jacobian_fd: h must be positive");
  }
  const Matrix jac = jacobian(problem, x);
  if (!jac.allFinite()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double worst = 0.0;
  Vector probe = x;
  for (int j = 0; j < problem.n; ++j) {
    probe(j) = x(j) + h;
    const Vector fwd = problem.value_oracle(probe);
    probe(j) = x(j) - h;
    const Vector bwd = problem.value_oracle(probe);
    probe(j) = x(j);
    if (!fwd.allFinite() || !bwd.allFinite()) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    for (int i = 0; i < problem.m; ++i) {
      const double fd = (fwd(i) - bwd(i)) / (2.0 * h);
      const double err =
          std::abs(fd - jac(i, j)) / std::max(1.0, std::abs(jac(i, j)));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace modo
