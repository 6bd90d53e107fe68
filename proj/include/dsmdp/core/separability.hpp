#pragma once

#include <cstdint>
#include <vector>

#include "dsmdp/core/mdp.hpp"

namespace dsmdp {

struct SeparabilityVerdict {
  bool separable = true;
  // Witness when not separable: a sequence solving two distinct states.
  std::vector<ActionId> sequence;
  StateId first = kDead;
  StateId second = kDead;
};

// Enumerates every action sequence up to max_len. Throws budget_exceeded when
// sum_l |A|^l exceeds `sequence_budget`.
SeparabilityVerdict check_solution_separable_bruteforce(const TabularDsmdp& mdp, unsigned max_len,
                                                        std::uint64_t sequence_budget = 20'000'000);

// Exact decision via backward search on the synchronized pair graph from
// (goal, goal). Throws budget_exceeded when num_states^2 exceeds pair_budget.
SeparabilityVerdict check_solution_separable_exact(const TabularDsmdp& mdp,
                                                   std::uint64_t pair_budget = 16'000'000);

}  // namespace dsmdp
