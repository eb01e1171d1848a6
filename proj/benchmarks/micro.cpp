// Microbenchmarks for the cost centers: the simplex-dual subproblem at
// several objective counts, one backtracking search, and full solver runs
// on representative suite entries.

#include <benchmark/benchmark.h>

#include <random>

#include "modo/bench.hpp"
#include "modo/dual.hpp"
#include "modo/line_search.hpp"
#include "modo/problems.hpp"
#include "modo/solver.hpp"

namespace {

using namespace modo;

Matrix random_gradients(std::mt19937_64& rng, int m, int n) {
  Matrix g(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = 6.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 3.0;
  return g;
}

void BM_dual_solve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1234);
  std::vector<Matrix> instances;
  for (int i = 0; i < 64; ++i) instances.push_back(random_gradients(rng, m, n));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dual(instances[k++ & 63]));
  }
}
BENCHMARK(BM_dual_solve)
    ->Args({2, 50})
    ->Args({3, 10})
    ->Args({4, 10})
    ->Args({9, 2});

void BM_dual_solve_warm(benchmark::State& state) {
  std::mt19937_64 rng(99);
  const Matrix g = random_gradients(rng, 4, 10);
  const Vector warm = solve_dual(g).lambda;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dual(g, warm));
  }
}
BENCHMARK(BM_dual_solve_warm);

void BM_armijo_quadratic(benchmark::State& state) {
  const Problem demo = make_imbalance_demo();
  const Vector x = (Vector(2) << 1.0, 0.0).finished();
  EvalCounter counter;
  const Vector fx = evaluate(demo, x, counter);
  const Matrix jac = jacobian(demo, x);
  const DualSolution dual = solve_dual(jac);
  const Vector slopes = jac * dual.direction;
  const VectorEvaluator f = [&](const Vector& p) {
    return evaluate(demo, p, counter);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        armijo(f, x, fx, dual.direction, slopes, LineSearchParams{}));
  }
}
BENCHMARK(BM_armijo_quadratic);

void BM_full_solve(benchmark::State& state) {
  const std::string name =
      state.range(0) == 0 ? "JOS1a" : (state.range(0) == 1 ? "WIT1" : "FDS");
  const Method method = state.range(1) == 0 ? Method::sdmo : Method::bbdmo;
  const Problem problem = make_problem(name);
  std::mt19937_64 rng(derive_run_seed(42, name, 0));
  const Vector x0 = sample_initial_point(problem, rng);
  SolverConfig cfg;
  cfg.method = method;
  cfg.record_iterates = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(problem, x0, cfg));
  }
  state.SetLabel(name + "/" + to_string(method));
}
BENCHMARK(BM_full_solve)
    ->Args({0, 0})
    ->Args({0, 1})
    ->Args({1, 0})
    ->Args({1, 1})
    ->Args({2, 1});

}  // namespace

BENCHMARK_MAIN();
