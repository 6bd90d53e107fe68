#pragma once

#include <optional>
#include <random>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp {

using Rng = std::mt19937_64;

// Successors uniform over all states (goal = 0 included); kDead with p_dead.
TabularDsmdp random_dsmdp(Rng& rng, std::size_t num_states, std::size_t num_actions, double p_dead = 0.1);

// Each action acts as an injective map on states (a random permutation with
// entries dropped to kDead with p_dead), so the result is solution-separable.
TabularDsmdp random_invertible_dsmdp(Rng& rng, std::size_t num_states, std::size_t num_actions,
                                     double p_dead = 0.1);

// Like random_dsmdp but every non-goal state has at least one action that
// ends the walk (goal or kDead), which bounds the probability mass of long
// action sequences by ((|A|-1)/|A|)^L.
TabularDsmdp random_absorbing_dsmdp(Rng& rng, std::size_t num_states, std::size_t num_actions);

// Random weights (uniform(0.05, 1)) over a random non-empty subset of at most
// max_support solvable non-goal states; nullopt when there are none.
std::optional<StateDistribution> random_solvable_distribution(Rng& rng, const TabularDsmdp& mdp,
                                                              const SolutionLengthTable& d,
                                                              std::size_t max_support);

}  // namespace dsmdp
