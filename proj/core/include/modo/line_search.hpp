#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modo/types.hpp"

namespace modo {

struct LineSearchParams {
  double sigma = 0.1;        ///< sufficient-decrease fraction
  double gamma = 0.5;        ///< backtracking contraction
  double initial_beta = 1.0; ///< first trial stepsize (may exceed 1)
  double beta_floor = 1e-12; ///< below this the search gives up
  int window = 10;           ///< M: max-type lookback depth
  double eta = 0.8;          ///< average-type memory weight
};

/// Rolling reference state for the nonmonotone searches.  `history` holds the
/// most recent objective vectors (newest last, at most window + 1); (q, c)
/// are the average-type weight and reference.
struct NonmonotoneState {
  std::vector<Vector> history;
  double q = 1.0;
  Vector c;
};

struct LineSearchOutcome {
  double beta = 0.0;
  int trials = 0;          ///< objective-vector evaluations spent
  Vector accepted_values;  ///< F at the accepted point
  Vector accepted_point;   ///< x + beta * d
};

/// Raised when backtracking reaches beta_floor without acceptance.
class LineSearchFailure : public std::runtime_error {
 public:
  LineSearchFailure(const std::string& what, int trials_spent)
      : std::runtime_error(what), trials(trials_spent) {}

  int trials;
};

using VectorEvaluator = std::function<Vector(const Vector&)>;

/// Monotone backtracking: accepts the first beta = initial_beta * gamma^p
/// with F(x + beta d) - F(x) <= sigma * beta * slopes componentwise.
/// Non-finite trial values count as a failed test.  `slopes` carries
/// <grad F_i, d> for the true (unscaled) gradients.
LineSearchOutcome armijo(const VectorEvaluator& f, const Vector& x,
                         const Vector& fx, const Vector& d,
                         const Vector& slopes, const LineSearchParams& params);

/// Max-type nonmonotone backtracking: like armijo but measured against the
/// componentwise max over state.history (which must be nonempty and contain
/// F(x) as its newest entry).
LineSearchOutcome max_nonmonotone(const VectorEvaluator& f, const Vector& x,
                                  const NonmonotoneState& state,
                                  const Vector& d, const Vector& slopes,
                                  const LineSearchParams& params);

/// One step of the average-type reference recursion:
///   q' = eta * q + 1,  c' = (eta * q * c + fx) / q'.
std::pair<double, Vector> update_avg_reference(double q, const Vector& c,
                                               const Vector& fx, double eta);

struct AvgSearchResult {
  LineSearchOutcome outcome;
  double q = 1.0;
  Vector c;
};

/// Average-type nonmonotone backtracking: first advances (q, c) with the
/// current fx via update_avg_reference, then backtracks against the updated
/// reference.  Returns the outcome together with the advanced (q, c).
AvgSearchResult avg_nonmonotone(const VectorEvaluator& f, const Vector& x,
                                const Vector& fx, double q, const Vector& c,
                                const Vector& d, const Vector& slopes,
                                const LineSearchParams& params);

/// Appends fx to the max-type window and drops the oldest entries until at
/// most window + 1 remain.
void push_history(NonmonotoneState& state, Vector fx, int window);

}  // namespace modo
