#include "dsmdp/rl/environment_runner.hpp"

#include <cmath>

#include "dsmdp/core/error.hpp"

namespace dsmdp::rl {

RlEnvironment::RlEnvironment(const TabularDsmdp& mdp, StateDistribution p, double gamma)
    : table_(mdp), cost_(mdp.num_states() * mdp.num_actions(), 1), p_(std::move(p)), gamma_(gamma) {
  finish();
}

RlEnvironment::RlEnvironment(const TabularDsmdp& base, const std::vector<skills::Skill>& skill_list,
                             StateDistribution p, skills::GoalPassMode mode, double gamma)
    : p_(std::move(p)), gamma_(gamma) {
  skills::AugmentedMdp aug = skills::augment(base, skill_list, mode);
  table_ = std::move(aug.table);
  const std::size_t na = table_.num_actions();
  cost_.assign(table_.num_states() * na, 0);
  for (StateId s = 0; s < table_.num_states(); ++s) {
    if (table_.is_goal(s)) continue;
    for (ActionId a = 0; a < na; ++a) {
      if (a < base.num_actions()) {
        cost_[s * na + a] = 1;
        continue;
      }
      // Count executed base actions: stop at the goal or the dead sink.
      const auto seq = aug.skills[a - base.num_actions()].sequence_for(s);
      StateId cur = s;
      std::uint32_t used = 0;
      for (ActionId b : seq) {
        cur = base.successor(cur, b);
        ++used;
        if (cur == kDead || base.is_goal(cur)) break;
      }
      cost_[s * na + a] = used;
    }
  }
  finish();
}

void RlEnvironment::finish() {
  if (!(gamma_ > 0.0 && gamma_ <= 1.0)) fail(ErrorCode::config_invalid, "gamma must lie in (0, 1]");
  d_ = shortest_solution_lengths(table_);
  require_solvable_support(p_, table_, d_);
  start_ = std::discrete_distribution<std::size_t>(p_.probs().begin(), p_.probs().end());
}

StateId RlEnvironment::sample_start(Rng& rng) const {
  return p_.states()[start_(rng)];
}

double RlEnvironment::v_star(StateId s) const noexcept {
  if (s == kDead) return 0.0;
  if (table_.is_goal(s)) return 1.0;
  if (!d_.solvable(s)) return 0.0;
  return gamma_ == 1.0 ? 1.0 : std::pow(gamma_, static_cast<double>(d_.d[s]) - 1.0);
}

double RlEnvironment::q_star(StateId s, ActionId a) const noexcept {
  const StateId t = table_.successor(s, a);
  if (t == kDead) return 0.0;
  if (table_.is_goal(t)) return 1.0;
  return gamma_ * v_star(t);
}

}  // namespace dsmdp::rl
