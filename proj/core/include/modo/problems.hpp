#pragma once

#include <random>
#include <string>
#include <vector>

#include "modo/problem.hpp"

namespace modo {

/// Names of the benchmark suite problems, in canonical table order.
const std::vector<std::string>& problem_names();

/// Builds a suite problem by name.  `n_override` (> 0) changes the dimension
/// of the dimension-generic families (JOS1*, FDS); for every other problem a
/// positive override that differs from the fixed dimension is an error.
/// Unknown names throw std::invalid_argument.
Problem make_problem(const std::string& name, int n_override = 0);

/// A 2-D quadratic pair with severely imbalanced curvatures (1e-2 .. 1e2
/// spread) and a known efficient segment from (0,0) to (50,-50).  Used by
/// tests and demos; not part of the benchmark registry.
Problem make_imbalance_demo();

/// Uniform sample, strictly interior to the problem's box.  Consumes draws
/// from `rng` only; given equal engine states the result is identical across
/// platforms (no std::uniform_real_distribution involved).
Vector sample_initial_point(const Problem& problem, std::mt19937_64& rng);

/// Analytic description of a problem's efficient set, when one is known.
struct ParetoReference {
  enum class Kind { none, segment, axis_range };

  Kind kind = Kind::none;
  Vector a;  ///< segment start (kind == segment)
  Vector b;  ///< segment end   (kind == segment)

  bool known() const { return kind != Kind::none; }
  /// True iff x lies within `tol` (Euclidean) of the reference set.
  bool contains(const Vector& x, double tol) const;
  /// `count` evenly spread points of the reference set.
  std::vector<Vector> sample(int count) const;
};

/// Reference for the named problem; kind == none when no closed form is
/// catalogued.  Accepts suite names and the imbalance demo.
ParetoReference pareto_reference(const std::string& name);

}  // namespace modo
