#pragma once

// Shared fixtures for the unit and acceptance tests: deterministic random
// draws, small vector builders, and the strongly convex quadratic family
// used by the stepsize-bracket suites.

#include <initializer_list>
#include <random>

#include "modo/problem.hpp"

namespace modo::testing {

inline Vector vec(std::initializer_list<double> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

/// Uniform draw in [lo, hi) from the top 53 bits of the engine, identical on
/// every platform (std::uniform_real_distribution is not portable).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo,
                            double hi) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                            Eigen::Index cols, double lo, double hi) {
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = uniform(rng, lo, hi);
  return g;
}

/// Bi-objective diagonal quadratic f_i(x) = 0.5 (x-c_i)' D_i (x-c_i) with
/// curvatures (diagonal entries) drawn from [0.1, 50].  Strong-convexity
/// modulus mu_i and Lipschitz constant L_i are the diagonal extremes.
struct QuadraticFixture {
  Problem problem;
  Matrix curvatures;  ///< m x n diagonal entries of the Hessians
  Vector mu;          ///< per-objective smallest curvature
  Vector L;           ///< per-objective largest curvature
};

inline QuadraticFixture make_quadratic_fixture(std::mt19937_64& rng,
                                               int n = 3, int m = 2) {
  Matrix curv(m, n);
  Matrix centers(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      curv(i, j) = uniform(rng, 0.1, 50.0);
      centers(i, j) = uniform(rng, -3.0, 3.0);
    }
  }
  QuadraticFixture fx;
  fx.curvatures = curv;
  fx.mu = curv.rowwise().minCoeff();
  fx.L = curv.rowwise().maxCoeff();
  fx.problem.name = "quadratic-fixture";
  fx.problem.n = n;
  fx.problem.m = m;
  fx.problem.lower = Vector::Constant(n, -5.0);
  fx.problem.upper = Vector::Constant(n, 5.0);
  fx.problem.value_oracle = [curv, centers, m](const Vector& x) {
    Vector f(m);
    for (int i = 0; i < m; ++i) {
      const Vector r = x - centers.row(i).transpose();
      f(i) = 0.5 * r.dot(curv.row(i).transpose().cwiseProduct(r));
    }
    return f;
  };
  fx.problem.jacobian_oracle = [curv, centers, m, n](const Vector& x) {
    Matrix jac(m, n);
    for (int i = 0; i < m; ++i) {
      const Vector r = x - centers.row(i).transpose();
      jac.row(i) = curv.row(i).cwiseProduct(r.transpose());
    }
    return jac;
  };
  return fx;
}

}  // namespace modo::testing
