#pragma once

#include <vector>

#include "dsmdp/core/mdp.hpp"
#include "dsmdp/skills/skill.hpp"

namespace dsmdp::skills {

// Base MDP with skills appended after the base actions; the table is
// materialized so every metric runs on it unchanged.
struct AugmentedMdp {
  TabularDsmdp table;
  std::vector<Skill> skills;
  GoalPassMode mode = GoalPassMode::undefined_is_dead;

  std::size_t base_actions() const noexcept { return table.base_action_count(); }
  bool macros_only() const noexcept;
  // Base-action sequence behind augmented action a taken in state s.
  std::vector<ActionId> expansion(StateId s, ActionId a) const;
};

AugmentedMdp augment(const TabularDsmdp& base, std::vector<Skill> skills,
                     GoalPassMode mode = GoalPassMode::undefined_is_dead);

// Convenience: macros written as label strings ("URRD").
AugmentedMdp augment_with_macros(const TabularDsmdp& base, const std::vector<std::string>& macros,
                                 GoalPassMode mode = GoalPassMode::undefined_is_dead);
std::vector<Skill> macros_from_strings(const TabularDsmdp& base, const std::vector<std::string>& macros);

}  // namespace dsmdp::skills
