#include "dsmdp/core/mdp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dsmdp/core/error.hpp"

namespace dsmdp {

TabularDsmdp::TabularDsmdp(std::size_t num_states, std::size_t num_actions, StateId goal,
                           std::vector<StateId> successor, std::vector<std::string> action_labels,
                           std::size_t base_action_count)
    : num_states_(num_states),
      num_actions_(num_actions),
      goal_(goal),
      base_action_count_(base_action_count == 0 ? num_actions : base_action_count),
      successor_(std::move(successor)),
      labels_(std::move(action_labels)) {
  if (num_states == 0) fail(ErrorCode::invalid_argument, "MDP needs at least the goal state");
  if (num_states >= kDead) fail(ErrorCode::invalid_argument, "too many states for 32-bit ids");
  if (goal >= num_states) fail(ErrorCode::invalid_argument, "goal id out of range");
  if (successor_.size() != num_states * num_actions)
    fail(ErrorCode::invalid_argument, "successor table has wrong size");
  if (base_action_count_ > num_actions_)
    fail(ErrorCode::invalid_argument, "base_action_count exceeds num_actions");
  for (StateId t : successor_)
    if (t != kDead && t >= num_states) fail(ErrorCode::invalid_argument, "successor out of range");
  std::fill_n(successor_.begin() + static_cast<std::ptrdiff_t>(goal) * num_actions, num_actions, kDead);
  if (labels_.empty()) {
    labels_.reserve(num_actions);
    for (std::size_t a = 0; a < num_actions; ++a) labels_.push_back("a" + std::to_string(a));
  }
  if (labels_.size() != num_actions) fail(ErrorCode::invalid_argument, "label count mismatch");
}

bool TabularDsmdp::single_char_labels() const noexcept {
  return std::all_of(labels_.begin(), labels_.end(), [](const std::string& l) { return l.size() == 1; });
}

std::vector<ActionId> parse_actions(const TabularDsmdp& mdp, const std::string& text) {
  const auto& labels = mdp.action_labels();
  auto lookup = [&](const std::string& token) -> ActionId {
    auto it = std::find(labels.begin(), labels.end(), token);
    if (it == labels.end()) fail(ErrorCode::invalid_argument, "unknown action label '" + token + "'");
    return static_cast<ActionId>(it - labels.begin());
  };
  std::vector<ActionId> out;
  if (mdp.single_char_labels()) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(lookup(std::string(1, c)));
  } else {
    std::istringstream is(text);
    std::string token;
    while (is >> token) out.push_back(lookup(token));
  }
  return out;
}

std::string format_actions(const TabularDsmdp& mdp, std::span<const ActionId> actions) {
  std::string out;
  const bool compact = mdp.single_char_labels();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += mdp.action_labels().at(actions[i]);
  }
  return out;
}

InducedMdp induced_submdp(const TabularDsmdp& mdp, std::span<const StateId> kept) {
  std::vector<StateId> old_to_new(mdp.num_states(), kDead);
  StateId next = 0;
  for (StateId s : kept) {
    if (s >= mdp.num_states()) fail(ErrorCode::invalid_argument, "kept state out of range");
    if (old_to_new[s] == kDead) old_to_new[s] = next++;
  }
  if (old_to_new[mdp.goal()] == kDead) fail(ErrorCode::invalid_argument, "induced sub-MDP must keep the goal");
  std::vector<StateId> table(static_cast<std::size_t>(next) * mdp.num_actions(), kDead);
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    const StateId ns = old_to_new[s];
    if (ns == kDead || mdp.is_goal(s)) continue;
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      const StateId t = mdp.successor(s, a);
      table[static_cast<std::size_t>(ns) * mdp.num_actions() + a] = t == kDead ? kDead : old_to_new[t];
    }
  }
  return {TabularDsmdp(next, mdp.num_actions(), old_to_new[mdp.goal()], std::move(table),
                       mdp.action_labels(), mdp.base_action_count()),
          std::move(old_to_new)};
}

}  // namespace dsmdp
