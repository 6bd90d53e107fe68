#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/skills/augment.hpp"

namespace dsmdp::rl {

using Rng = std::mt19937_64;

// Episodic view of a (possibly augmented) DSMDP for RL: one step is one
// augmented action; skills are unrolled on the base and charged their base
// length against the episode's base-action budget.
class RlEnvironment {
 public:
  // Plain MDP: every action costs one base action.
  RlEnvironment(const TabularDsmdp& mdp, StateDistribution p, double gamma = 1.0);
  // Skill augmentation: transitions and costs come from unrolling on the base.
  RlEnvironment(const TabularDsmdp& base, const std::vector<skills::Skill>& skills, StateDistribution p,
                skills::GoalPassMode mode = skills::GoalPassMode::success, double gamma = 1.0);

  std::size_t num_states() const noexcept { return table_.num_states(); }
  std::size_t num_actions() const noexcept { return table_.num_actions(); }
  StateId goal() const noexcept { return table_.goal(); }
  const TabularDsmdp& table() const noexcept { return table_; }
  const StateDistribution& start_distribution() const noexcept { return p_; }
  const SolutionLengthTable& lengths() const noexcept { return d_; }
  double gamma() const noexcept { return gamma_; }

  StateId next(StateId s, ActionId a) const noexcept { return table_.successor(s, a); }
  // Base actions executed by a from s (up to the goal or the dead sink).
  std::uint32_t cost(StateId s, ActionId a) const noexcept { return cost_[s * table_.num_actions() + a]; }

  StateId sample_start(Rng& rng) const;

  // V*(s) = gamma^(d(s)-1) for solvable non-goal s, 1 at the goal, else 0.
  double v_star(StateId s) const noexcept;
  // Q*(s, a) = 1 into the goal, gamma * V*(T(s, a)) otherwise.
  double q_star(StateId s, ActionId a) const noexcept;

 private:
  void finish();

  TabularDsmdp table_;
  std::vector<std::uint32_t> cost_;
  StateDistribution p_;
  SolutionLengthTable d_;
  double gamma_;
  mutable std::discrete_distribution<std::size_t> start_;
};

}  // namespace dsmdp::rl
