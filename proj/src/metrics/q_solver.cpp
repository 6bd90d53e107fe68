#include "dsmdp/metrics/q_solver.hpp"

#include <algorithm>
#include <cmath>

#include "dsmdp/core/error.hpp"

namespace dsmdp::metrics {

QTable solve_q(const TabularDsmdp& mdp, const SolutionLengthTable& d, double delta, const QSolveOptions& options) {
  if (!(delta >= 0.0 && delta < 1.0)) fail(ErrorCode::invalid_argument, "delta must lie in [0, 1)");
  const std::size_t n = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  std::vector<StateId> active;
  for (StateId s = 0; s < n; ++s)
    if (!mdp.is_goal(s) && d.solvable(s)) active.push_back(s);

  QTable out;
  out.delta = delta;
  out.q.assign(n, 0.0);
  out.q[mdp.goal()] = 1.0;
  if (na == 0 || active.empty()) return out;
  const double c = (1.0 - delta) / static_cast<double>(na);
  std::vector<double> next = out.q;
  const auto table = mdp.table();
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    double residual = 0.0;
    for (StateId s : active) {
      const StateId* row = table.data() + static_cast<std::size_t>(s) * na;
      double sum = 0.0;
      for (std::size_t a = 0; a < na; ++a)
        if (row[a] != kDead) sum += out.q[row[a]];
      const double v = c * sum;
      residual = std::max(residual, std::abs(v - out.q[s]));
      next[s] = v;
    }
    out.q.swap(next);
    out.iterations = it;
    out.residual = residual;
    if (residual <= options.tol) return out;
  }
  throw NotConverged(out.iterations, out.residual);
}

QTable solve_q(const TabularDsmdp& mdp, double delta, const QSolveOptions& options) {
  return solve_q(mdp, shortest_solution_lengths(mdp), delta, options);
}

}  // namespace dsmdp::metrics
