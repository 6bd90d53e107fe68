#pragma once

#include <span>
#include <vector>

#include "dsmdp/core/mdp.hpp"

namespace dsmdp::skills {

// Minimum-token rewriting of a base-action solution with macros. Output ids:
// base actions keep their id, macro i becomes num_base_actions + i. Ties
// prefer the longest macro at the earliest position, then the lowest id.
std::vector<ActionId> rewrite_min_length(std::span<const ActionId> solution,
                                         const std::vector<std::vector<ActionId>>& macros,
                                         std::size_t num_base_actions);

std::vector<ActionId> expand_rewrite(std::span<const ActionId> rewritten,
                                     const std::vector<std::vector<ActionId>>& macros,
                                     std::size_t num_base_actions);

}  // namespace dsmdp::skills
