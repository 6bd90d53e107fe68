#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace dsmdp {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

// Absorbing failure sink. Never stored as a row; only appears as a successor.
inline constexpr StateId kDead = std::numeric_limits<StateId>::max();

// Deterministic single-goal MDP over dense state ids [0, num_states).
// The goal row carries no transitions and is stored as all-kDead.
class TabularDsmdp {
 public:
  TabularDsmdp() = default;
  TabularDsmdp(std::size_t num_states, std::size_t num_actions, StateId goal,
               std::vector<StateId> successor, std::vector<std::string> action_labels = {},
               std::size_t base_action_count = 0);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  StateId goal() const noexcept { return goal_; }
  std::size_t base_action_count() const noexcept { return base_action_count_; }
  bool is_goal(StateId s) const noexcept { return s == goal_; }

  StateId successor(StateId s, ActionId a) const noexcept {
    return successor_[static_cast<std::size_t>(s) * num_actions_ + a];
  }
  std::span<const StateId> row(StateId s) const noexcept {
    return {successor_.data() + static_cast<std::size_t>(s) * num_actions_, num_actions_};
  }
  std::span<const StateId> table() const noexcept { return successor_; }
  const std::vector<std::string>& action_labels() const noexcept { return labels_; }

  // True when every action label is exactly one character.
  bool single_char_labels() const noexcept;

  friend bool operator==(const TabularDsmdp&, const TabularDsmdp&) = default;

 private:
  std::size_t num_states_ = 0;
  std::size_t num_actions_ = 0;
  StateId goal_ = 0;
  std::size_t base_action_count_ = 0;
  std::vector<StateId> successor_;
  std::vector<std::string> labels_;
};

// Parses a sequence of action labels. Single-character label sets accept a
// compact string ("URRD"); otherwise labels are whitespace-separated.
std::vector<ActionId> parse_actions(const TabularDsmdp& mdp, const std::string& text);
std::string format_actions(const TabularDsmdp& mdp, std::span<const ActionId> actions);

// Sub-MDP on the kept states; transitions leaving the set go to kDead.
// `kept` must contain the goal. Returns the new MDP and old->new id map
// (kDead for dropped states).
struct InducedMdp {
  TabularDsmdp mdp;
  std::vector<StateId> old_to_new;
};
InducedMdp induced_submdp(const TabularDsmdp& mdp, std::span<const StateId> kept);

}  // namespace dsmdp
