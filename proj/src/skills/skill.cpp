#include "dsmdp/skills/skill.hpp"

#include <string_view>
#include <unordered_set>

#include "dsmdp/core/error.hpp"

namespace dsmdp::skills {

const char* to_string(GoalPassMode mode) {
  return mode == GoalPassMode::success ? "success" : "undefined_is_dead";
}

GoalPassMode goal_pass_mode_from_string(const std::string& s) {
  if (s == "success") return GoalPassMode::success;
  if (s == "undefined_is_dead" || s == "dead") return GoalPassMode::undefined_is_dead;
  fail(ErrorCode::config_invalid, "unknown goal pass mode '" + s + "'");
}

Skill Skill::macro(std::vector<ActionId> sequence, std::string label) {
  if (sequence.size() < 2) fail(ErrorCode::invalid_argument, "a macroaction needs at least two actions");
  Skill s;
  s.macro_ = true;
  s.arena_ = std::move(sequence);
  s.label_ = std::move(label);
  return s;
}

Skill Skill::tabular(const std::vector<std::vector<ActionId>>& per_state, std::string label) {
  Skill s;
  s.macro_ = false;
  s.offsets_.reserve(per_state.size() + 1);
  s.offsets_.push_back(0);
  for (const auto& seq : per_state) {
    s.arena_.insert(s.arena_.end(), seq.begin(), seq.end());
    s.offsets_.push_back(s.arena_.size());
  }
  s.label_ = std::move(label);
  return s;
}

std::span<const ActionId> Skill::sequence_for(StateId s) const noexcept {
  if (macro_) return arena_;
  return {arena_.data() + offsets_[s], static_cast<std::size_t>(offsets_[s + 1] - offsets_[s])};
}

UnrollResult unroll(const TabularDsmdp& base, StateId s, std::span<const ActionId> sequence) {
  if (s == kDead || base.is_goal(s)) fail(ErrorCode::invalid_argument, "unroll starts from a non-goal state");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    s = base.successor(s, sequence[i]);
    if (s == kDead) return {UnrollResult::Kind::dead, kDead, 0};
    if (base.is_goal(s)) return {UnrollResult::Kind::goal_at, s, i + 1};
  }
  return {UnrollResult::Kind::state, s, 0};
}

std::size_t behavior_variety(const Skill& skill, const TabularDsmdp& base) {
  if (skill.is_macro()) return 1;
  std::unordered_set<std::string_view> seen;
  for (StateId s = 0; s < base.num_states(); ++s) {
    if (base.is_goal(s)) continue;
    const auto seq = skill.sequence_for(s);
    seen.emplace(reinterpret_cast<const char*>(seq.data()), seq.size() * sizeof(ActionId));
  }
  return seen.size();
}

std::string macro_label(const TabularDsmdp& base, std::span<const ActionId> sequence) {
  return format_actions(base, sequence);
}

}  // namespace dsmdp::skills
