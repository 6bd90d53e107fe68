#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsmdp/core/mdp.hpp"

namespace dsmdp::skills {

// What happens when a skill's base-action sequence reaches the goal before
// its last action.
enum class GoalPassMode { undefined_is_dead, success };
const char* to_string(GoalPassMode mode);
GoalPassMode goal_pass_mode_from_string(const std::string& s);

// A skill maps each non-goal state to a sequence of base actions. Macros use
// the same sequence everywhere; tabular skills store one (possibly empty)
// sequence per state in a flat arena.
class Skill {
 public:
  static Skill macro(std::vector<ActionId> sequence, std::string label = {});
  // per_state must have one entry per base state; the goal entry is ignored.
  static Skill tabular(const std::vector<std::vector<ActionId>>& per_state, std::string label = {});

  bool is_macro() const noexcept { return macro_; }
  std::span<const ActionId> sequence_for(StateId s) const noexcept;
  std::span<const ActionId> macro_sequence() const noexcept { return arena_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t num_states() const noexcept { return macro_ ? 0 : offsets_.size() - 1; }

  // Set when some state's self-map could not be realized by a round trip and
  // falls back to the empty sequence.
  bool empty_self_maps() const noexcept { return empty_self_maps_; }
  void set_empty_self_maps(bool v) noexcept { empty_self_maps_ = v; }

 private:
  bool macro_ = true;
  bool empty_self_maps_ = false;
  std::vector<ActionId> arena_;
  std::vector<std::uint64_t> offsets_;
  std::string label_;
};

// Outcome of executing base actions from a non-goal state.
struct UnrollResult {
  enum class Kind { state, dead, goal_at };
  Kind kind;
  StateId state;     // final state for Kind::state
  std::size_t step;  // 1-based step at which the goal was reached (goal_at)
};

UnrollResult unroll(const TabularDsmdp& base, StateId s, std::span<const ActionId> sequence);

// Number of distinct sequences a skill emits over the non-goal states.
std::size_t behavior_variety(const Skill& skill, const TabularDsmdp& base);

// Macro label from base labels, e.g. "RRD".
std::string macro_label(const TabularDsmdp& base, std::span<const ActionId> sequence);

}  // namespace dsmdp::skills
