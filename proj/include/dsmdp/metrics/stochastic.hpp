#pragma once

#include <cstdint>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/metrics/q_solver.hpp"

namespace dsmdp::metrics {

struct Outcome {
  StateId next;  // may be kDead
  double prob;
};

// Small stochastic sparse-reward MDP; outcomes[s * num_actions + a] sums to 1.
// The goal row is ignored.
struct StochasticMdp {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  StateId goal = 0;
  std::vector<std::vector<Outcome>> outcomes;

  const std::vector<Outcome>& at(StateId s, ActionId a) const { return outcomes[s * num_actions + a]; }
  void validate() const;
};

StochasticMdp to_stochastic(const TabularDsmdp& mdp);

struct WeightedDepth {
  double depth = 0.0;          // sum_sigma w(sigma) |sigma|
  double covered_mass = 0.0;   // sum of w actually assigned
  std::uint64_t sequences = 0;  // sequences enumerated
  bool truncated = false;      // L_max reached before the mass hit 1
};

// Enumerates sequences by non-decreasing length (lexicographic within a
// length). Reaching the goal before the last action counts as failure.
// Throws mass_shortfall when the mass left at max_len exceeds mass_tol, and
// budget_exceeded when more than sequence_budget sequences are needed.
WeightedDepth stochastic_weighted_depth(const StochasticMdp& mdp, StateId s, std::size_t max_len, double mass_tol,
                                        std::uint64_t sequence_budget = 50'000'000);

// |A| * E_p[weighted depth].
double stochastic_learning_difficulty(const StochasticMdp& mdp, const StateDistribution& p, std::size_t max_len,
                                      double mass_tol);

// Jacobi iteration of q(s) = (1 - delta)/|A| sum_a sum_t P(t|s,a) q(t).
QTable stochastic_q(const StochasticMdp& mdp, double delta, const QSolveOptions& options = {});

}  // namespace dsmdp::metrics
