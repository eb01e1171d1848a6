#pragma once

#include "modo/types.hpp"

namespace modo {

inline constexpr double kDefaultAlphaMin = 1e-3;
inline constexpr double kDefaultAlphaMax = 1e3;

/// Barzilai-Borwein memory carried across iterations: the last accepted step,
/// the per-objective gradient differences over that step, and the safeguarded
/// curvature coefficients they produce.
struct ScalingState {
  Vector s;       ///< x^k - x^{k-1}
  Matrix ys;      ///< m x n; row i = grad F_i(x^k) - grad F_i(x^{k-1})
  Vector alphas;  ///< m safeguarded coefficients
  double alpha_min = kDefaultAlphaMin;
  double alpha_max = kDefaultAlphaMax;
};

/// Safeguarded Barzilai-Borwein coefficient for one (s, y) pair:
///   <s,y> > 0  ->  clamp(<s,y> / <s,s>)
///   <s,y> < 0  ->  clamp(|y| / |s|)
///   <s,y> = 0  ->  alpha_min
/// The sign test treats |<s,y>| <= 1e-12 |s| |y| as zero.
/// Throws std::invalid_argument when s = 0.
double safeguarded_bb_coefficient(const Vector& s, const Vector& y,
                                  double alpha_min, double alpha_max);

/// Applies safeguarded_bb_coefficient row-wise: alphas[i] from (s, ys.row(i)).
Vector update_alphas(const Vector& s, const Matrix& ys, double alpha_min,
                     double alpha_max);

/// Divides row i of the Jacobian by alphas[i].
/// Throws std::invalid_argument if any alpha is not strictly positive.
Matrix scale_gradients(const Matrix& jacobian, const Vector& alphas);

}  // namespace modo
