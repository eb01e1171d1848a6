#include "modo/line_search.hpp"

#include <cmath>

namespace modo {

namespace {

void require_params(const LineSearchParams& p) {
  if (!(p.sigma > 0.0 && p.sigma < 1.0)) {
    throw std::invalid_argument("line search: sigma must lie in (0, 1)");
  }
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) {
    throw std::invalid_argument("line search: gamma must lie in (0, 1)");
  }
  if (!(p.initial_beta > 0.0)) {
    throw std::invalid_argument("line search: initial_beta must be positive");
  }
  if (!(p.beta_floor > 0.0)) {
    throw std::invalid_argument("line search: beta_floor must be positive");
  }
}

/// Shared backtracking core: accepts the first beta on the ladder
/// initial_beta * gamma^p with F(x + beta d) - reference <= sigma beta slopes
/// componentwise.  Non-finite trials fail the test.
LineSearchOutcome backtrack(const VectorEvaluator& f, const Vector& x,
                            const Vector& reference, const Vector& d,
                            const Vector& slopes, const LineSearchParams& p) {
  require_params(p);
  if (reference.size() != slopes.size()) {
    throw std::invalid_argument("line search: reference/slope size mismatch");
  }
  if (d.size() != x.size()) {
    throw std::invalid_argument("line search: direction/point size mismatch");
  }
  LineSearchOutcome out;
  double beta = p.initial_beta;
  while (beta >= p.beta_floor) {
    Vector trial_x = x + beta * d;
    Vector trial_f = f(trial_x);
    ++out.trials;
    const bool ok =
        trial_f.allFinite() &&
        ((trial_f - reference).array() <= (p.sigma * beta) * slopes.array())
            .all();
    if (ok) {
      out.beta = beta;
      out.accepted_values = std::move(trial_f);
      out.accepted_point = std::move(trial_x);
      return out;
    }
    beta *= p.gamma;
  }
  throw LineSearchFailure(
      "line search: no acceptable step above beta floor after " +
          std::to_string(out.trials) + " trials",
      out.trials);
}

}  // namespace

LineSearchOutcome armijo(const VectorEvaluator& f, const Vector& x,
                         const Vector& fx, const Vector& d,
                         const Vector& slopes, const LineSearchParams& params) {
  return backtrack(f, x, fx, d, slopes, params);
}

LineSearchOutcome max_nonmonotone(const VectorEvaluator& f, const Vector& x,
                                  const NonmonotoneState& state,
                                  const Vector& d, const Vector& slopes,
                                  const LineSearchParams& params) {
  if (state.history.empty()) {
    throw std::invalid_argument("max_nonmonotone: history must not be empty");
  }
  Vector reference = state.history.front();
  for (std::size_t i = 1; i < state.history.size(); ++i) {
    reference = reference.cwiseMax(state.history[i]);
  }
  return backtrack(f, x, reference, d, slopes, params);
}

std::pair<double, Vector> update_avg_reference(double q, const Vector& c,
                                               const Vector& fx, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("update_avg_reference: eta must lie in [0, 1]");
  }
  if (!(q >= 1.0)) {
    throw std::invalid_argument("update_avg_reference: q must be >= 1");
  }
  const double q_next = eta * q + 1.0;
  Vector c_next = (eta * q * c + fx) / q_next;
  return {q_next, std::move(c_next)};
}

AvgSearchResult avg_nonmonotone(const VectorEvaluator& f, const Vector& x,
                                const Vector& fx, double q, const Vector& c,
                                const Vector& d, const Vector& slopes,
                                const LineSearchParams& params) {
  auto [q_next, c_next] = update_avg_reference(q, c, fx, params.eta);
  AvgSearchResult result;
  result.outcome = backtrack(f, x, c_next, d, slopes, params);
  result.q = q_next;
  result.c = std::move(c_next);
  return result;
}

void push_history(NonmonotoneState& state, Vector fx, int window) {
  if (window < 0) {
    throw std::invalid_argument("push_history: window must be nonnegative");
  }
  state.history.push_back(std::move(fx));
  const std::size_t cap = static_cast<std::size_t>(window) + 1;
  if (state.history.size() > cap) {
    state.history.erase(state.history.begin(),
                        state.history.end() - static_cast<long>(cap));
  }
}

}  // namespace modo
