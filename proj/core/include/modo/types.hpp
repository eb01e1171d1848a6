#pragma once

#include <Eigen/Dense>

namespace modo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Counts full objective-vector evaluations.  One counter is owned by one
/// solver run; line-search trials are the only operations that bump it.
struct EvalCounter {
  long fevals = 0;
};

}  // namespace modo
