#include "modo/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/LU>

namespace modo {

namespace {

constexpr double kWeightTol = 1e-10;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

void require_input(const Matrix& gradients) {
  if (gradients.rows() < 1 || gradients.cols() < 1) {
    throw std::invalid_argument("solve_dual: gradient matrix must be at least 1x1");
  }
  if (!gradients.allFinite()) {
    throw std::invalid_argument("solve_dual: gradients must be finite");
  }
}

/// Minimizer of the quadratic over one face of the simplex: support
/// restricted to `support`, weights summing to one, sign unconstrained.
/// Solves the bordered stationarity system; nullopt when it is inconsistent.
std::optional<Vector> face_weights(const Matrix& gram,
                                   const std::vector<int>& support) {
  const int k = static_cast<int>(support.size());
  Matrix sys = Matrix::Zero(k + 1, k + 1);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) sys(a, b) = gram(support[a], support[b]);
    sys(a, k) = 1.0;
    sys(k, a) = 1.0;
  }
  Vector rhs = Vector::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::FullPivLU<Matrix> lu(sys);
  Vector sol = lu.solve(rhs);
  if (!sol.allFinite()) return std::nullopt;
  // One round of iterative refinement: faces mixing rows of very different
  // norms are ill-conditioned enough for the raw solve to lose digits the
  // caller's certificate can see.
  sol += lu.solve(rhs - sys * sol);
  if (!sol.allFinite() ||
      (sys * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-8) {
    return std::nullopt;
  }
  Vector full = Vector::Zero(gram.rows());
  for (int a = 0; a < k; ++a) full(support[a]) = sol(a);
  return full;
}

/// Clips negative dust and renormalizes onto the simplex.
std::optional<Vector> project_clip(const Vector& lambda) {
  Vector out = lambda.cwiseMax(0.0);
  const double total = out.sum();
  if (!(total > 0.0) || !std::isfinite(total)) return std::nullopt;
  out /= total;
  return out;
}

/// Fills direction/theta/t/active/duality_gap from lambda.
void finalize(DualSolution& sol, const Matrix& gradients) {
  const auto m = gradients.rows();
  sol.direction = direction_from_weights(gradients, sol.lambda);
  const double dd = sol.direction.squaredNorm();
  sol.theta = -0.5 * dd;
  sol.t = -dd;

  const Vector slopes = gradients * sol.direction;  // <g_i, d>
  const double active_tol = 1e-8 * std::max(1.0, dd);
  sol.active.clear();
  for (int i = 0; i < m; ++i) {
    if (slopes(i) >= sol.t - active_tol) sol.active.push_back(i);
  }

  // Certificate relative to the optimum's own magnitude: a value of r means
  // every <g_i, d> is at most t + r*|d|^2, i.e. the slopes the line searches
  // rely on are correct to a factor (1 - r).  A max-row-norm floor keeps the
  // ratio meaningful when the direction is numerically zero.
  const double scale = gradients.rowwise().squaredNorm().maxCoeff();
  const Vector w = -slopes;  // (G lambda)_i
  const double gap = sol.lambda.dot(w) - w.minCoeff();
  const double floor = std::max(1e-20 * scale,
                                std::numeric_limits<double>::min());
  sol.duality_gap = std::max(0.0, gap / std::max(dd, floor));
}

}  // namespace

Vector direction_from_weights(const Matrix& gradients, const Vector& lambda) {
  if (lambda.size() != gradients.rows()) {
    throw std::invalid_argument(
        "direction_from_weights: weight count does not match gradient rows");
  }
  return -(gradients.transpose() * lambda);
}

DualSolution solve_dual(const Matrix& gradients,
                        const std::optional<Vector>& warm_start,
                        double gap_tol, int max_fw_iters) {
  require_input(gradients);
  if (!(gap_tol >= 0.0)) {
    throw std::invalid_argument("solve_dual: gap_tol must be nonnegative");
  }
  const int m = static_cast<int>(gradients.rows());
  if (max_fw_iters <= 0) max_fw_iters = 1000 * m;

  DualSolution sol;

  if (m == 1) {
    sol.lambda = Vector::Ones(1);
    finalize(sol, gradients);
    return sol;
  }

  if (m == 2) {
    const Vector g1 = gradients.row(0);
    const Vector g2 = gradients.row(1);
    const double denom = (g1 - g2).squaredNorm();
    double l1 = 0.5;  // coincident gradients: any weights; split evenly
    if (denom > 0.0) l1 = clamp01((g2 - g1).dot(g2) / denom);
    sol.lambda = Vector(2);
    sol.lambda << l1, 1.0 - l1;
    finalize(sol, gradients);
    return sol;
  }

  // m >= 3: Frank-Wolfe on the normalized Gram matrix, then exact face
  // refinement.  gap_tol is relative to the optimum's own squared norm, so
  // Gram matrices whose rows span many orders of magnitude (routine once
  // gradients are rescaled by spread-out BB coefficients) are certified at
  // the scale of their own solution, not of their largest row.
  const Matrix gram = gradients * gradients.transpose();
  const double scale = gram.diagonal().maxCoeff();
  if (!(scale > 0.0)) {  // every gradient is zero
    sol.lambda = Vector::Constant(m, 1.0 / m);
    finalize(sol, gradients);
    return sol;
  }
  const Matrix gram_n = gram / scale;

  Vector lambda = Vector::Constant(m, 1.0 / m);
  if (warm_start && warm_start->size() == m && warm_start->allFinite()) {
    if (auto proj = project_clip(*warm_start)) lambda = *proj;
  }

  const auto rel_gap_met = [gap_tol](double gap, double obj) {
    return gap <= gap_tol * obj;
  };
  int iters = 0;
  const auto run_fw = [&](int iter_budget) {
    while (iters < iter_budget) {
      const Vector w = gram_n * lambda;
      Eigen::Index j;
      const double wmin = w.minCoeff(&j);  // ties resolve to the lowest index
      const double lw = lambda.dot(w);
      const double gap = lw - wmin;
      if (rel_gap_met(gap, lw)) return true;
      const double denom = lw - 2.0 * wmin + gram_n(j, j);
      const double step = denom > 0.0 ? clamp01(gap / denom) : 1.0;
      if (!(step > 0.0)) return false;  // stalled at roundoff level
      lambda *= (1.0 - step);
      lambda(j) += step;
      ++iters;
    }
    return false;
  };

  // A short burst usually suffices for warm-started interior optima.
  bool converged = run_fw(std::min(64 * m, max_fw_iters));

  // Frank-Wolfe approaches boundary optima only at a sublinear rate, far
  // short of the certificate tolerance, so the face suggested by the iterate
  // (and, for small m, every face) is solved exactly and the best feasible
  // candidate wins.  For m <= 8 this enumeration is itself an exact solver:
  // the optimal face's stationary point is among the candidates.
  //
  // Candidates are ranked by gap first, objective second.  Near a critical
  // point the optimum may assign a weight of order |d|^2 to an otherwise
  // irrelevant gradient; that weight changes the objective far below double
  // resolution while deciding whether the slope bound <g_i, d> <= t holds
  // at all, so the objective alone cannot separate the candidates.
  const auto score = [&](const Vector& l) {
    const Vector w = gram_n * l;
    const double obj = l.dot(w);
    return std::pair<double, double>(obj - w.minCoeff(), obj);
  };
  Vector best = lambda;
  std::pair<double, double> best_score = score(best);
  const auto consider = [&](const Vector& candidate) {
    if (auto proj = project_clip(candidate)) {
      const auto s = score(*proj);
      if (s < best_score) {
        best_score = s;
        best = *proj;
      }
    }
  };
  const auto polish = [&] {
    std::vector<int> support;
    for (int i = 0; i < m; ++i) {
      if (lambda(i) > kWeightTol) support.push_back(i);
    }
    if (!support.empty()) {
      if (auto cand = face_weights(gram_n, support)) consider(*cand);
    }
    if (m <= 8) {
      for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i < m; ++i) {
          if (mask & (1u << i)) sub.push_back(i);
        }
        if (auto cand = face_weights(gram_n, sub)) consider(*cand);
      }
    }
  };
  // Exact fallback for supports the enumeration cannot cover: a corral of
  // rows grows one vertex at a time; each affine face minimizer either is
  // feasible (and becomes the iterate) or a line move toward it drops the
  // vertex whose weight hits zero first.  The objective strictly decreases
  // across cycles, so the corral never repeats and the walk reaches the
  // optimal face exactly (up to the face solves).  Vertex sweeps alone
  // cannot get there: near-antiparallel rows make them zigzag, keeping
  // every stray weight above the support threshold, so the single
  // support-face solve above mixes in rows the optimum excludes.  Cycles
  // draw on the same iteration budget as the sweep, so a starved call
  // stays starved.
  const auto corral_refine = [&] {
    Eigen::Index start = 0;
    const Vector diag = gram_n.diagonal();
    diag.minCoeff(&start);
    std::vector<int> corral{static_cast<int>(start)};
    Vector lam = Vector::Zero(m);
    lam(start) = 1.0;
    double prev_obj = std::numeric_limits<double>::infinity();
    while (iters < max_fw_iters) {
      ++iters;
      const Vector w = gram_n * lam;
      const double obj = lam.dot(w);
      Eigen::Index j = 0;
      const double wmin = w.minCoeff(&j);
      consider(lam);
      if (rel_gap_met(obj - wmin, obj)) return;
      if (!(obj < prev_obj)) return;  // progress below roundoff resolution
      prev_obj = obj;
      if (std::find(corral.begin(), corral.end(), static_cast<int>(j)) !=
          corral.end()) {
        return;  // best vertex already inside: at the floating-point optimum
      }
      corral.push_back(static_cast<int>(j));
      while (iters < max_fw_iters) {
        const auto aff = face_weights(gram_n, corral);
        if (!aff) return;  // degenerate face: keep the best candidate found
        double vmin = 0.0;
        for (int idx : corral) vmin = std::min(vmin, (*aff)(idx));
        if (vmin >= -kWeightTol) {
          lam = aff->cwiseMax(0.0);
          const double total = lam.sum();
          if (!(total > 0.0) || !std::isfinite(total)) return;
          lam /= total;
          break;
        }
        ++iters;
        double theta = 1.0;
        for (int idx : corral) {
          const double va = (*aff)(idx);
          if (va < 0.0 && lam(idx) > va) {
            theta = std::min(theta, lam(idx) / (lam(idx) - va));
          }
        }
        const Vector moved = (1.0 - theta) * lam + theta * (*aff);
        std::vector<int> next;
        next.reserve(corral.size());
        for (int idx : corral) {
          if (moved(idx) > kWeightTol) next.push_back(idx);
        }
        if (next.empty() || next.size() == corral.size()) return;  // stalled
        lam = Vector::Zero(m);
        for (int idx : next) lam(idx) = moved(idx);
        lam /= lam.sum();
        corral = std::move(next);
      }
    }
  };

  if (!converged) {
    polish();
    if (!rel_gap_met(best_score.first, best_score.second)) {
      if (m > 8) {
        // No exact enumeration available: split the remaining budget
        // between a longer vertex sweep and the corral refinement.
        lambda = best;
        run_fw(iters + (max_fw_iters - iters) / 2);
        consider(lambda);
        polish();
      }
      if (!rel_gap_met(best_score.first, best_score.second)) {
        corral_refine();
      }
    }
  }

  sol.lambda = best;
  sol.fw_iterations = iters;
  finalize(sol, gradients);

  // Refuse to hand out a direction whose slope certificate is materially
  // wrong (an undetected ascent direction would show up here as a gap of
  // order one).  Certificates limited by face conditioning rather than by
  // the iteration stay well below the 1e-3 floor after refinement.
  // Directions that are numerically zero relative to the largest gradient
  // are exempt: callers treat those points as critical and the ratio below
  // would measure only roundoff.
  const double dd = sol.direction.squaredNorm();
  if (sol.duality_gap > std::max(1e3 * gap_tol, 1e-3) &&
      dd > 1e-12 * scale) {
    throw DualNonConvergence(
        "solve_dual: relative gap certificate " +
            std::to_string(sol.duality_gap) + " still above tolerance after " +
            std::to_string(iters) + " weight iterations",
        sol);
  }
  return sol;
}

double kkt_residual(const Matrix& gradients, const DualSolution& sol) {
  if (sol.lambda.size() != gradients.rows() ||
      sol.direction.size() != gradients.cols()) {
    throw std::invalid_argument("kkt_residual: solution/gradient shape mismatch");
  }
  double res = std::abs(sol.lambda.sum() - 1.0);
  res = std::max(res, -std::min(0.0, sol.lambda.minCoeff()));
  const Vector slopes = gradients * sol.direction;
  for (Eigen::Index i = 0; i < slopes.size(); ++i) {
    res = std::max(res, slopes(i) - sol.t);  // violation of <g_i, d> <= t
    res = std::max(res, std::abs(sol.lambda(i) * (sol.t - slopes(i))));
  }
  return res;
}

bool is_critical(const DualSolution& sol, double tol) {
  return sol.direction.norm() < tol;
}

}  // namespace modo
