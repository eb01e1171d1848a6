#include "modo/bb.hpp"

#include <cmath>
#include <stdexcept>

namespace modo {

double safeguarded_bb_coefficient(const Vector& s, const Vector& y,
                                  double alpha_min, double alpha_max) {
  if (s.size() != y.size()) {
    throw std::invalid_argument("safeguarded_bb_coefficient: size mismatch");
  }
  if (!(alpha_min > 0.0) || !(alpha_max >= alpha_min)) {
    throw std::invalid_argument(
        "safeguarded_bb_coefficient: need 0 < alpha_min <= alpha_max");
  }
  const double ss = s.squaredNorm();
  if (!(ss > 0.0)) {
    throw std::invalid_argument("safeguarded_bb_coefficient: step s is zero");
  }
  const double sy = s.dot(y);
  const double snorm = std::sqrt(ss);
  const double ynorm = y.norm();
  if (std::abs(sy) <= 1e-12 * snorm * ynorm) {
    return alpha_min;  // no usable curvature along the step
  }
  const double raw = sy > 0.0 ? sy / ss : ynorm / snorm;
  return std::min(alpha_max, std::max(alpha_min, raw));
}

Vector update_alphas(const Vector& s, const Matrix& ys, double alpha_min,
                     double alpha_max) {
  if (ys.cols() != s.size()) {
    throw std::invalid_argument("update_alphas: gradient-difference width mismatch");
  }
  Vector alphas(ys.rows());
  for (Eigen::Index i = 0; i < ys.rows(); ++i) {
    alphas(i) =
        safeguarded_bb_coefficient(s, ys.row(i).transpose(), alpha_min, alpha_max);
  }
  return alphas;
}

Matrix scale_gradients(const Matrix& jacobian, const Vector& alphas) {
  if (alphas.size() != jacobian.rows()) {
    throw std::invalid_argument("scale_gradients: one alpha per row required");
  }
  if (!((alphas.array() > 0.0).all())) {
    throw std::invalid_argument("scale_gradients: alphas must be positive");
  }
  return alphas.cwiseInverse().asDiagonal() * jacobian;
}

}  // namespace modo
