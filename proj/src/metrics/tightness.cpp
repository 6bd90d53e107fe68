#include "dsmdp/metrics/tightness.hpp"

#include <cmath>
#include <optional>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"

namespace dsmdp::metrics {

double tightness_fraction(double p, double delta) { return delta * p / (delta - (1.0 - delta) * p); }

namespace {

std::vector<ActionId> shortest_solution(const TabularDsmdp& mdp, const SolutionLengthTable& d, StateId s) {
  std::vector<ActionId> out;
  while (!mdp.is_goal(s)) {
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      const StateId t = mdp.successor(s, a);
      if (t != kDead && d.solvable(t) && d.d[t] + 1 == d.d[s]) {
        out.push_back(a);
        s = t;
        break;
      }
    }
  }
  return out;
}

// A one- or two-action loop back to s that never touches the goal.
std::optional<std::vector<ActionId>> round_trip(const TabularDsmdp& mdp, StateId s) {
  for (ActionId a = 0; a < mdp.num_actions(); ++a)
    if (mdp.successor(s, a) == s) return std::vector<ActionId>{a};
  for (ActionId a = 0; a < mdp.num_actions(); ++a) {
    const StateId t = mdp.successor(s, a);
    if (t == kDead || mdp.is_goal(t)) continue;
    for (ActionId b = 0; b < mdp.num_actions(); ++b)
      if (mdp.successor(t, b) == s) return std::vector<ActionId>{a, b};
  }
  return std::nullopt;
}

}  // namespace

TightnessAugmentation tightness_augmentation(const TabularDsmdp& base, const StateDistribution& p, double delta,
                                             std::size_t num_skills) {
  if (!(delta > p.max_prob()) || !(delta < 1.0))
    fail(ErrorCode::delta_too_small, "tightness construction needs max p < delta < 1");
  if (num_skills == 0) fail(ErrorCode::invalid_argument, "tightness construction needs at least one skill");
  const SolutionLengthTable d = shortest_solution_lengths(base);
  require_solvable_support(p, base, d);
  const std::size_t n = base.num_states();

  TightnessAugmentation out;
  std::vector<std::vector<ActionId>> self_map(n);
  for (StateId s = 0; s < n; ++s) {
    if (base.is_goal(s)) continue;
    if (auto loop = round_trip(base, s)) {
      self_map[s] = std::move(*loop);
    } else {
      out.empty_self_maps = true;
    }
  }

  // Goal-sending skills of support state i start at a per-state offset so
  // their sets differ and distinct shortest solutions exist.
  std::vector<std::vector<std::vector<ActionId>>> per_skill(num_skills, self_map);
  const std::size_t support = p.support_size();
  for (std::size_t i = 0; i < support; ++i) {
    const StateId s = p.states()[i];
    const auto m = static_cast<std::size_t>(std::floor(static_cast<double>(num_skills) *
                                                       tightness_fraction(p.probs()[i], delta)));
    out.goal_skills.push_back(m);
    const std::vector<ActionId> solution = shortest_solution(base, d, s);
    const std::size_t offset = i * num_skills / support;
    for (std::size_t j = 0; j < m; ++j) per_skill[(offset + j) % num_skills][s] = solution;
  }

  std::vector<skills::Skill> skill_list;
  skill_list.reserve(num_skills);
  for (std::size_t k = 0; k < num_skills; ++k) {
    skills::Skill z = skills::Skill::tabular(per_skill[k], "tight" + std::to_string(k));
    z.set_empty_self_maps(out.empty_self_maps);
    skill_list.push_back(std::move(z));
  }
  out.augmented = skills::augment(base, std::move(skill_list), skills::GoalPassMode::undefined_is_dead);
  return out;
}

}  // namespace dsmdp::metrics
