#include "dsmdp/core/random_mdp.hpp"

#include <algorithm>
#include <numeric>

#include "dsmdp/core/error.hpp"

namespace dsmdp {

namespace {
void require_shape(std::size_t num_states, std::size_t num_actions) {
  if (num_states < 1 || num_actions < 1) fail(ErrorCode::invalid_argument, "random MDP needs states and actions");
}
}  // namespace

TabularDsmdp random_dsmdp(Rng& rng, std::size_t num_states, std::size_t num_actions, double p_dead) {
  require_shape(num_states, num_actions);
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(num_states - 1));
  std::bernoulli_distribution dead(p_dead);
  std::vector<StateId> table(num_states * num_actions);
  for (StateId& t : table) t = dead(rng) ? kDead : pick(rng);
  return TabularDsmdp(num_states, num_actions, 0, std::move(table));
}

TabularDsmdp random_invertible_dsmdp(Rng& rng, std::size_t num_states, std::size_t num_actions, double p_dead) {
  require_shape(num_states, num_actions);
  std::bernoulli_distribution dead(p_dead);
  std::vector<StateId> table(num_states * num_actions);
  std::vector<StateId> perm(num_states);
  for (std::size_t a = 0; a < num_actions; ++a) {
    std::iota(perm.begin(), perm.end(), StateId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t s = 0; s < num_states; ++s) table[s * num_actions + a] = dead(rng) ? kDead : perm[s];
  }
  return TabularDsmdp(num_states, num_actions, 0, std::move(table));
}

TabularDsmdp random_absorbing_dsmdp(Rng& rng, std::size_t num_states, std::size_t num_actions) {
  require_shape(num_states, num_actions);
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(num_states - 1));
  std::uniform_int_distribution<std::size_t> pick_action(0, num_actions - 1);
  std::bernoulli_distribution coin(0.5);
  std::vector<StateId> table(num_states * num_actions);
  for (std::size_t s = 0; s < num_states; ++s) {
    for (std::size_t a = 0; a < num_actions; ++a) table[s * num_actions + a] = pick(rng);
    const std::size_t stop = pick_action(rng);
    table[s * num_actions + stop] = coin(rng) ? StateId{0} : kDead;
  }
  return TabularDsmdp(num_states, num_actions, 0, std::move(table));
}

std::optional<StateDistribution> random_solvable_distribution(Rng& rng, const TabularDsmdp& mdp,
                                                              const SolutionLengthTable& d,
                                                              std::size_t max_support) {
  std::vector<StateId> candidates;
  for (StateId s = 0; s < mdp.num_states(); ++s)
    if (!mdp.is_goal(s) && d.solvable(s)) candidates.push_back(s);
  if (candidates.empty() || max_support == 0) return std::nullopt;
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::uniform_int_distribution<std::size_t> size(1, std::min(max_support, candidates.size()));
  candidates.resize(size(rng));
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<std::pair<StateId, double>> w;
  for (StateId s : candidates) w.emplace_back(s, weight(rng));
  return StateDistribution::from_weights(std::move(w));
}

}  // namespace dsmdp
