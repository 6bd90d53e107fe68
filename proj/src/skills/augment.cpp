#include "dsmdp/skills/augment.hpp"

#include <algorithm>

#include "dsmdp/core/error.hpp"

namespace dsmdp::skills {

bool AugmentedMdp::macros_only() const noexcept {
  return std::all_of(skills.begin(), skills.end(), [](const Skill& z) { return z.is_macro(); });
}

std::vector<ActionId> AugmentedMdp::expansion(StateId s, ActionId a) const {
  if (a < base_actions()) return {a};
  const auto seq = skills.at(a - base_actions()).sequence_for(s);
  return {seq.begin(), seq.end()};
}

AugmentedMdp augment(const TabularDsmdp& base, std::vector<Skill> skills, GoalPassMode mode) {
  const std::size_t n = base.num_states();
  const std::size_t nb = base.num_actions();
  for (const Skill& z : skills) {
    if (!z.is_macro() && z.num_states() != n) fail(ErrorCode::invalid_argument, "tabular skill size mismatch");
    const auto check = [&](std::span<const ActionId> seq) {
      for (ActionId a : seq)
        if (a >= nb) fail(ErrorCode::invalid_argument, "skill uses an unknown base action");
    };
    if (z.is_macro()) {
      check(z.macro_sequence());
    } else {
      for (StateId s = 0; s < n; ++s) check(z.sequence_for(s));
    }
  }
  const std::size_t na = nb + skills.size();
  std::vector<StateId> table(n * na, kDead);
  for (StateId s = 0; s < n; ++s) {
    if (base.is_goal(s)) continue;
    for (std::size_t a = 0; a < nb; ++a) table[s * na + a] = base.successor(s, static_cast<ActionId>(a));
    for (std::size_t k = 0; k < skills.size(); ++k) {
      const UnrollResult r = unroll(base, s, skills[k].sequence_for(s));
      StateId t = r.state;
      if (r.kind == UnrollResult::Kind::goal_at) {
        const bool exact = r.step == skills[k].sequence_for(s).size();
        t = exact || mode == GoalPassMode::success ? base.goal() : kDead;
      }
      table[s * na + nb + k] = t;
    }
  }
  std::vector<std::string> labels = base.action_labels();
  for (std::size_t k = 0; k < skills.size(); ++k) {
    std::string label = skills[k].label();
    if (label.empty())
      label = skills[k].is_macro() ? macro_label(base, skills[k].macro_sequence()) : "z" + std::to_string(k);
    labels.push_back(std::move(label));
  }
  AugmentedMdp out;
  out.table = TabularDsmdp(n, na, base.goal(), std::move(table), std::move(labels), nb);
  out.skills = std::move(skills);
  out.mode = mode;
  return out;
}

std::vector<Skill> macros_from_strings(const TabularDsmdp& base, const std::vector<std::string>& macros) {
  std::vector<Skill> out;
  for (const std::string& m : macros) out.push_back(Skill::macro(parse_actions(base, m), m));
  return out;
}

AugmentedMdp augment_with_macros(const TabularDsmdp& base, const std::vector<std::string>& macros, GoalPassMode mode) {
  return augment(base, macros_from_strings(base, macros), mode);
}

}  // namespace dsmdp::skills
