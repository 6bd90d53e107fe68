#include "dsmdp/core/separability.hpp"

#include <algorithm>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"

namespace dsmdp {

namespace {

struct Tracker {
  StateId start;
  StateId current;
};

struct BruteForce {
  const TabularDsmdp& mdp;
  unsigned max_len;
  std::vector<ActionId> prefix;
  SeparabilityVerdict verdict;

  bool descend(const std::vector<Tracker>& alive) {
    if (prefix.size() == max_len) return true;
    std::vector<Tracker> next;
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      next.clear();
      StateId solved_first = kDead;
      prefix.push_back(a);
      for (const Tracker& tr : alive) {
        const StateId t = mdp.successor(tr.current, a);
        if (t == kDead) continue;
        if (mdp.is_goal(t)) {
          if (solved_first != kDead) {
            verdict = {false, prefix, solved_first, tr.start};
            return false;
          }
          solved_first = tr.start;
          continue;
        }
        next.push_back({tr.start, t});
      }
      if (!next.empty() && !descend(next)) return false;
      prefix.pop_back();
    }
    return true;
  }
};

}  // namespace

SeparabilityVerdict check_solution_separable_bruteforce(const TabularDsmdp& mdp, unsigned max_len,
                                                        std::uint64_t sequence_budget) {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (unsigned l = 1; l <= max_len; ++l) {
    if (mdp.num_actions() != 0 && level > sequence_budget / mdp.num_actions())
      fail(ErrorCode::budget_exceeded, "brute-force separability check exceeds sequence budget");
    level *= mdp.num_actions();
    total += level;
    if (total > sequence_budget)
      fail(ErrorCode::budget_exceeded, "brute-force separability check exceeds sequence budget");
  }
  std::vector<Tracker> alive;
  for (StateId s = 0; s < mdp.num_states(); ++s)
    if (!mdp.is_goal(s)) alive.push_back({s, s});
  BruteForce bf{mdp, max_len, {}, {}};
  bf.descend(alive);
  return bf.verdict;
}

SeparabilityVerdict check_solution_separable_exact(const TabularDsmdp& mdp, std::uint64_t pair_budget) {
  const std::uint64_t n = mdp.num_states();
  if (n * n > pair_budget) fail(ErrorCode::budget_exceeded, "pair graph exceeds budget");
  const ReverseGraph rev = build_reverse_graph(mdp);
  const std::size_t na = mdp.num_actions();
  // Predecessors bucketed by action for each target.
  std::vector<std::vector<std::vector<StateId>>> by_action(n);
  for (StateId t = 0; t < n; ++t) {
    auto preds = rev.predecessors(t);
    if (preds.empty()) continue;
    by_action[t].resize(na);
    for (const ReverseEdge& e : preds) by_action[t][e.action].push_back(e.pred);
  }
  std::vector<std::uint8_t> seen(n * n, 0);
  // parent pointers to reconstruct a witness
  std::vector<std::uint64_t> parent(n * n, ~std::uint64_t{0});
  std::vector<ActionId> via(n * n, 0);
  const std::uint64_t root = static_cast<std::uint64_t>(mdp.goal()) * n + mdp.goal();
  seen[root] = 1;
  std::vector<std::uint64_t> queue{root};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateId x = static_cast<StateId>(queue[head] / n);
    const StateId y = static_cast<StateId>(queue[head] % n);
    if (by_action[x].empty() || by_action[y].empty()) continue;
    for (ActionId a = 0; a < na; ++a) {
      for (StateId u : by_action[x][a]) {
        for (StateId v : by_action[y][a]) {
          const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
          if (seen[key]) continue;
          seen[key] = 1;
          parent[key] = queue[head];
          via[key] = a;
          if (u != v) {
            SeparabilityVerdict out;
            out.separable = false;
            out.first = u;
            out.second = v;
            for (std::uint64_t k = key; k != root; k = parent[k]) out.sequence.push_back(via[k]);
            return out;
          }
          queue.push_back(key);
        }
      }
    }
  }
  return {};
}

}  // namespace dsmdp
