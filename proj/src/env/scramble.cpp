#include "dsmdp/env/scramble.hpp"

#include <algorithm>

#include "dsmdp/core/error.hpp"

namespace dsmdp::env {

namespace {

StateId apply(const MoveTable& moves, StateId s, const std::vector<std::size_t>& seq) {
  for (std::size_t m : seq) {
    s = moves.at(s, m);
    if (s == kDead) return kDead;
  }
  return s;
}

}  // namespace

StateDistribution scramble_distribution(const TabularDsmdp& mdp, const MoveTable& moves,
                                        const ScrambleMoves& scramble, unsigned k_max) {
  if (k_max == 0) fail(ErrorCode::invalid_argument, "scramble needs k_max >= 1");
  if (moves.num_states != mdp.num_states()) fail(ErrorCode::invalid_argument, "move table size mismatch");
  if (scramble.sequences.empty() || scramble.group.size() != scramble.sequences.size())
    fail(ErrorCode::invalid_argument, "malformed scramble move set");
  const std::size_t n = mdp.num_states();
  int max_group = -1;
  for (int g : scramble.group) max_group = std::max(max_group, g);
  // Context c = last group + 1; c = 0 means no constraint.
  const std::size_t contexts = static_cast<std::size_t>(max_group + 2);
  std::vector<double> cur(n * contexts, 0.0), next(n * contexts, 0.0), marginal(n, 0.0);
  cur[static_cast<std::size_t>(mdp.goal()) * contexts] = 1.0;
  std::vector<StateId> targets(scramble.sequences.size());
  for (unsigned k = 1; k <= k_max; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      bool any = false;
      for (std::size_t c = 0; c < contexts; ++c) any = any || cur[s * contexts + c] != 0.0;
      if (!any) continue;
      for (std::size_t m = 0; m < targets.size(); ++m)
        targets[m] = apply(moves, static_cast<StateId>(s), scramble.sequences[m]);
      for (std::size_t c = 0; c < contexts; ++c) {
        const double mass = cur[s * contexts + c];
        if (mass == 0.0) continue;
        const int last = static_cast<int>(c) - 1;
        std::size_t legal = 0;
        for (std::size_t m = 0; m < targets.size(); ++m)
          if (targets[m] != kDead && (last < 0 || scramble.group[m] != last)) ++legal;
        if (legal == 0) fail(ErrorCode::invalid_argument, "scramble reached a state with no legal move");
        const double share = mass / static_cast<double>(legal);
        for (std::size_t m = 0; m < targets.size(); ++m) {
          if (targets[m] == kDead || (last >= 0 && scramble.group[m] == last)) continue;
          const std::size_t nc = scramble.group[m] < 0 ? 0 : static_cast<std::size_t>(scramble.group[m] + 1);
          next[static_cast<std::size_t>(targets[m]) * contexts + nc] += share;
        }
      }
    }
    cur.swap(next);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t c = 0; c < contexts; ++c) marginal[s] += cur[s * contexts + c];
  }
  marginal[mdp.goal()] = 0.0;
  return StateDistribution::from_dense(marginal);
}

}  // namespace dsmdp::env
