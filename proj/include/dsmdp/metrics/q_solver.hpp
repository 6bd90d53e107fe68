#pragma once

#include <cstddef>
#include <vector>

#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp::metrics {

// q(s): probability that a uniformly random policy, stopping with
// probability delta before each step, solves s.
struct QTable {
  std::vector<double> q;
  double delta = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;

  double at(StateId s) const noexcept { return s == kDead ? 0.0 : q[s]; }
};

struct QSolveOptions {
  double tol = 1e-12;
  std::size_t max_iter = 50'000;
};

// Jacobi iteration from q = 0 (goal fixed at 1). Throws NotConverged when the
// sup-norm update is still above tol after max_iter sweeps.
QTable solve_q(const TabularDsmdp& mdp, double delta, const QSolveOptions& options = {});
QTable solve_q(const TabularDsmdp& mdp, const SolutionLengthTable& d, double delta,
               const QSolveOptions& options = {});

}  // namespace dsmdp::metrics
