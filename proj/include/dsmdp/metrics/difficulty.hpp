#pragma once

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/metrics/q_solver.hpp"

namespace dsmdp::metrics {

// |A| * E_p[d].
double p_learning_difficulty(const TabularDsmdp& mdp, const StateDistribution& p, const SolutionLengthTable& d);
double p_learning_difficulty(const TabularDsmdp& mdp, const StateDistribution& p);

// E_p[-ln q]. Throws q_underflow if some support state has q = 0.
double p_exploration_difficulty(const StateDistribution& p, const QTable& q);

// ln E_p[1/q], evaluated with log-sum-exp; identical to the geometric
// version when p is a point mass.
double p_exploration_difficulty_arithmetic(const StateDistribution& p, const QTable& q);

// sum over solvable non-goal states of delta/(1-delta) q(s).
double solution_density(const TabularDsmdp& mdp, const QTable& q, const SolutionLengthTable& d);

// rho(s) = delta/(1-delta) q(s). Throws delta_zero when delta == 0.
double solution_density_weight(const QTable& q, StateId s);

// ln(lambda * j_learn + (1 - lambda) * exp(j_explore)) via log-sum-exp.
double log_combined_difficulty(double j_learn, double j_explore, double lambda);

}  // namespace dsmdp::metrics
