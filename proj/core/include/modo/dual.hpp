#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modo/types.hpp"

namespace modo {

/// Solution of the direction-finding subproblem at a point: the negated
/// minimum-norm element of the convex hull of the gradient rows, together
/// with the simplex weights that produce it.
struct DualSolution {
  Vector lambda;     ///< simplex weights, length m
  Vector direction;  ///< d = -sum_i lambda_i g_i
  double theta = 0.0;  ///< optimal value -0.5 * |d|^2
  double t = 0.0;      ///< -|d|^2; common slope of the active objectives along d
  std::vector<int> active;  ///< indices i with <g_i, d> at the common value t
  int fw_iterations = 0;    ///< Frank-Wolfe steps taken (0 when a closed form applied)
  double duality_gap = 0.0;  ///< gap certificate relative to |d|^2 (see solve_dual)
};

/// Thrown when the weight iteration exhausts its budget while the gap
/// certificate is still far above tolerance.  Carries the best iterate.
class DualNonConvergence : public std::runtime_error {
 public:
  DualNonConvergence(const std::string& what, DualSolution best_so_far)
      : std::runtime_error(what), best(std::move(best_so_far)) {}

  DualSolution best;
};

/// Solves min_{lambda in simplex} 0.5 * |sum_i lambda_i g_i|^2 for the
/// gradient rows of `gradients` (m x n).
///
/// m = 1 and m = 2 are handled in closed form.  Larger m runs Frank-Wolfe
/// on the Gram matrix (vertex = most-negative coordinate of the gradient of
/// the quadratic, exact step length), followed by an active-set refinement
/// that solves each candidate face's equality-constrained system exactly;
/// for m <= 8 every face is tried, which makes the refinement an exact
/// solver on its own.
///
/// `gap_tol` bounds the Frank-Wolfe gap RELATIVE to |d|^2: on return (and
/// in DualSolution::duality_gap) a certificate value r guarantees
/// <g_i, d> <= t + r * |d|^2 for every objective, independent of how the
/// row norms are scaled -- uniformly or against each other.
///
/// `max_fw_iters` <= 0 selects the default budget of 1000 * m.
/// Throws std::invalid_argument on empty or non-finite input, and
/// DualNonConvergence when the certificate ends above max(1000 * gap_tol,
/// 1e-3) for a direction that is not numerically zero.
DualSolution solve_dual(const Matrix& gradients,
                        const std::optional<Vector>& warm_start = {},
                        double gap_tol = 1e-12, int max_fw_iters = 0);

/// d = -sum_i lambda_i g_i for arbitrary weights (no simplex check).
Vector direction_from_weights(const Matrix& gradients, const Vector& lambda);

/// Max violation among: simplex feasibility of lambda, the common-slope
/// inequalities <g_i, d> <= t, and complementary slackness
/// |lambda_i (t - <g_i, d>)|.  Zero (up to roundoff) at an exact solution.
double kkt_residual(const Matrix& gradients, const DualSolution& sol);

/// True iff |direction| < tol: the point the gradients were taken at admits
/// no common descent direction beyond tolerance.
bool is_critical(const DualSolution& sol, double tol);

}  // namespace modo
