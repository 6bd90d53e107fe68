#include "dsmdp/metrics/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dsmdp/core/error.hpp"

namespace dsmdp::metrics {

double p_learning_difficulty(const TabularDsmdp& mdp, const StateDistribution& p, const SolutionLengthTable& d) {
  require_solvable_support(p, mdp, d);
  return static_cast<double>(mdp.num_actions()) * mean_solution_length(p, d);
}

double p_learning_difficulty(const TabularDsmdp& mdp, const StateDistribution& p) {
  return p_learning_difficulty(mdp, p, shortest_solution_lengths(mdp));
}

namespace {
double neg_log_q(const QTable& q, StateId s) {
  const double v = q.at(s);
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "q(" << s << ") = " << v << " is not positive";
    fail(ErrorCode::q_underflow, os.str());
  }
  return -std::log(v);
}
}  // namespace

double p_exploration_difficulty(const StateDistribution& p, const QTable& q) {
  if (p.empty()) fail(ErrorCode::invalid_argument, "empty distribution");
  return p.expectation([&](StateId s) { return neg_log_q(q, s); });
}

double p_exploration_difficulty_arithmetic(const StateDistribution& p, const QTable& q) {
  if (p.empty()) fail(ErrorCode::invalid_argument, "empty distribution");
  double m = -std::numeric_limits<double>::infinity();
  for (StateId s : p.states()) m = std::max(m, neg_log_q(q, s));
  double acc = 0.0;
  for (std::size_t i = 0; i < p.support_size(); ++i) acc += p.probs()[i] * std::exp(neg_log_q(q, p.states()[i]) - m);
  return m + std::log(acc);
}

double solution_density(const TabularDsmdp& mdp, const QTable& q, const SolutionLengthTable& d) {
  if (q.delta == 0.0) fail(ErrorCode::delta_zero, "solution density needs delta > 0");
  double sum = 0.0;
  for (StateId s = 0; s < mdp.num_states(); ++s)
    if (!mdp.is_goal(s) && d.solvable(s)) sum += q.q[s];
  return q.delta / (1.0 - q.delta) * sum;
}

double solution_density_weight(const QTable& q, StateId s) {
  if (q.delta == 0.0) fail(ErrorCode::delta_zero, "solution density needs delta > 0");
  return q.delta / (1.0 - q.delta) * q.at(s);
}

double log_combined_difficulty(double j_learn, double j_explore, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorCode::invalid_argument, "lambda must lie in [0, 1]");
  if (!(j_learn > 0.0)) fail(ErrorCode::invalid_argument, "J_learn must be positive");
  const double inf = std::numeric_limits<double>::infinity();
  const double a = lambda > 0.0 ? std::log(lambda) + std::log(j_learn) : -inf;
  const double b = lambda < 1.0 ? std::log1p(-lambda) + j_explore : -inf;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace dsmdp::metrics
