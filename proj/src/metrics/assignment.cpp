#include "dsmdp/metrics/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dsmdp/core/error.hpp"

namespace dsmdp::metrics {

const char* to_string(AssignmentMethod m) {
  switch (m) {
    case AssignmentMethod::matching_exact: return "matching_exact";
    case AssignmentMethod::exhaustive_exact: return "exhaustive_exact";
    case AssignmentMethod::greedy_lower_bound: return "greedy_lower_bound";
    case AssignmentMethod::greedy_upper_bound: return "greedy_upper_bound";
    case AssignmentMethod::separable_exact: return "separable_exact";
  }
  return "unknown";
}

namespace {

constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

struct HopcroftKarp {
  const std::vector<std::vector<std::uint32_t>>& adj;
  std::vector<std::uint32_t> match_l, match_r, dist;
  std::vector<std::size_t> it;

  HopcroftKarp(const std::vector<std::vector<std::uint32_t>>& a, std::size_t num_right)
      : adj(a), match_l(a.size(), kFree), match_r(num_right, kFree), dist(a.size()), it(a.size()) {}

  bool layer() {
    std::vector<std::uint32_t> queue;
    for (std::uint32_t l = 0; l < adj.size(); ++l) {
      dist[l] = match_l[l] == kFree ? 0 : kFree;
      if (match_l[l] == kFree) queue.push_back(l);
    }
    bool found = false;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::uint32_t l = queue[h];
      for (std::uint32_t r : adj[l]) {
        const std::uint32_t l2 = match_r[r];
        if (l2 == kFree) {
          found = true;
        } else if (dist[l2] == kFree) {
          dist[l2] = dist[l] + 1;
          queue.push_back(l2);
        }
      }
    }
    return found;
  }

  bool augment(std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const std::uint32_t l = stack.back();
      if (it[l] == adj[l].size()) {
        dist[l] = kFree;
        stack.pop_back();
        continue;
      }
      const std::uint32_t r = adj[l][it[l]];
      const std::uint32_t l2 = match_r[r];
      if (l2 == kFree) {
        for (std::uint32_t li : stack) {
          const std::uint32_t ri = adj[li][it[li]];
          match_l[li] = ri;
          match_r[ri] = li;
        }
        return true;
      }
      if (dist[l2] != kFree && dist[l2] == dist[l] + 1 && l2 != l) {
        stack.push_back(l2);
      } else {
        ++it[l];
      }
    }
    return false;
  }

  std::size_t run() {
    std::size_t size = 0;
    while (layer()) {
      std::fill(it.begin(), it.end(), 0);
      for (std::uint32_t l = 0; l < adj.size(); ++l)
        if (match_l[l] == kFree && augment(l)) ++size;
    }
    return size;
  }
};

double h(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

// Options per left vertex with private right vertices (adjacent to that left
// vertex only) collapsed to one representative.
std::vector<std::vector<std::uint32_t>> compress_options(const std::vector<std::vector<std::uint32_t>>& adj,
                                                         std::size_t num_right, std::vector<bool>& has_private) {
  std::vector<std::uint32_t> degree(num_right, 0);
  for (const auto& opts : adj)
    for (std::uint32_t r : opts) ++degree[r];
  std::vector<std::vector<std::uint32_t>> out(adj.size());
  has_private.assign(adj.size(), false);
  for (std::size_t l = 0; l < adj.size(); ++l) {
    bool private_taken = false;
    for (std::uint32_t r : adj[l]) {
      if (degree[r] == 1) {
        has_private[l] = true;
        if (private_taken) continue;
        private_taken = true;
      }
      out[l].push_back(r);
    }
  }
  return out;
}

struct Search {
  std::span<const double> probs;
  std::vector<std::vector<std::uint32_t>> options;
  std::vector<std::size_t> order;
  std::vector<double> mass;
  std::vector<std::uint32_t> current, best_choice;
  double best;
  bool maximize;
  std::uint64_t nodes = 0, node_cap;
  bool aborted = false;

  void dfs(std::size_t depth, double entropy) {
    if (aborted) return;
    if (++nodes > node_cap) {
      aborted = true;
      return;
    }
    if (depth == order.size()) {
      if (maximize ? entropy > best : entropy < best) {
        best = entropy;
        best_choice = current;
      }
      return;
    }
    const std::size_t l = order[depth];
    const double p = probs[l];
    for (std::uint32_t r : options[l]) {
      const double before = mass[r];
      const double delta = h(before + p) - h(before);
      mass[r] = before + p;
      current[l] = r;
      dfs(depth + 1, entropy + delta);
      mass[r] = before;
    }
  }
};

AssignmentResult greedy(std::span<const double> probs, const std::vector<std::vector<std::uint32_t>>& adj,
                        std::size_t num_right, bool join_largest) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  std::vector<double> mass(num_right, 0.0);
  AssignmentResult res;
  res.choice.assign(probs.size(), kFree);
  res.method = join_largest ? AssignmentMethod::greedy_upper_bound : AssignmentMethod::greedy_lower_bound;
  for (std::size_t l : order) {
    std::uint32_t pick = adj[l].front();
    for (std::uint32_t r : adj[l])
      if (join_largest ? mass[r] > mass[pick] : mass[r] < mass[pick]) pick = r;
    mass[pick] += probs[l];
    res.choice[l] = pick;
  }
  for (double m : mass) res.entropy += h(m);
  return res;
}

void require_options(const std::vector<std::vector<std::uint32_t>>& adj, std::span<const double> probs) {
  if (adj.size() != probs.size()) fail(ErrorCode::invalid_argument, "assignment size mismatch");
  for (const auto& opts : adj)
    if (opts.empty()) fail(ErrorCode::invalid_argument, "every state needs at least one solution option");
}

AssignmentResult exhaustive(std::span<const double> probs, const std::vector<std::vector<std::uint32_t>>& adj,
                            std::size_t num_right, bool maximize, const AssignmentLimits& limits, bool* ok) {
  std::vector<bool> has_private;
  Search search{probs, compress_options(adj, num_right, has_private), {}, std::vector<double>(num_right, 0.0),
                std::vector<std::uint32_t>(probs.size(), kFree), {},
                maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity(),
                maximize, 0, limits.node_cap};
  double fixed_entropy = 0.0;
  for (std::size_t l = 0; l < probs.size(); ++l) {
    if (maximize && has_private[l]) {
      // A private solution never lowers entropy, so it dominates.
      std::uint32_t r = kFree;
      for (std::uint32_t cand : search.options[l])
        if (std::count_if(adj.begin(), adj.end(), [&](const auto& o) {
              return std::find(o.begin(), o.end(), cand) != o.end();
            }) == 1)
          r = cand;
      search.current[l] = r;
      fixed_entropy += h(probs[l]);
    } else {
      search.order.push_back(l);
    }
  }
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  search.dfs(0, 0.0);
  *ok = !search.aborted;
  AssignmentResult res;
  res.entropy = search.best + fixed_entropy;
  res.method = AssignmentMethod::exhaustive_exact;
  res.choice = search.best_choice.empty() ? search.current : search.best_choice;
  return res;
}

}  // namespace

std::size_t max_bipartite_matching(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t num_right) {
  HopcroftKarp hk(adj, num_right);
  return hk.run();
}

AssignmentResult max_entropy_assignment(std::span<const double> probs,
                                        const std::vector<std::vector<std::uint32_t>>& adj, std::size_t num_right,
                                        const AssignmentLimits& limits) {
  require_options(adj, probs);
  HopcroftKarp hk(adj, num_right);
  if (hk.run() == adj.size()) {
    AssignmentResult res;
    for (double p : probs) res.entropy += h(p);
    res.method = AssignmentMethod::matching_exact;
    res.choice = hk.match_l;
    return res;
  }
  if (adj.size() <= limits.exhaustive_max_left) {
    bool ok = false;
    AssignmentResult res = exhaustive(probs, adj, num_right, true, limits, &ok);
    if (ok) return res;
  }
  return greedy(probs, adj, num_right, false);
}

AssignmentResult min_entropy_assignment(std::span<const double> probs,
                                        const std::vector<std::vector<std::uint32_t>>& adj, std::size_t num_right,
                                        const AssignmentLimits& limits) {
  require_options(adj, probs);
  if (adj.size() <= limits.exhaustive_max_left) {
    bool ok = false;
    AssignmentResult res = exhaustive(probs, adj, num_right, false, limits, &ok);
    if (ok) return res;
  }
  return greedy(probs, adj, num_right, true);
}

namespace {

struct SolutionDfs {
  const TabularDsmdp& mdp;
  const SolutionLengthTable& d;
  std::size_t max_len;
  bool shortest_only;
  std::size_t cap;
  std::vector<ActionId> path;
  std::vector<std::vector<ActionId>> out;
  bool cap_hit = false;

  void visit(StateId u) {
    for (ActionId a = 0; a < mdp.num_actions() && !cap_hit; ++a) {
      const StateId t = mdp.successor(u, a);
      if (t == kDead || !d.solvable(t)) continue;
      const std::size_t len = path.size() + 1;
      if (shortest_only && d.d[t] + 1 != d.d[u]) continue;
      if (len + d.d[t] > max_len) continue;
      path.push_back(a);
      if (mdp.is_goal(t)) {
        if (out.size() == cap) {
          cap_hit = true;
        } else {
          out.push_back(path);
        }
      } else {
        visit(t);
      }
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<ActionId>> enumerate_shortest_solutions(const TabularDsmdp& mdp, const SolutionLengthTable& d,
                                                                StateId s, std::size_t cap, bool* cap_hit) {
  if (!d.solvable(s) || mdp.is_goal(s)) fail(ErrorCode::support_unsolvable, "state has no solution to enumerate");
  SolutionDfs dfs{mdp, d, d.d[s], true, cap, {}, {}};
  dfs.visit(s);
  if (cap_hit) *cap_hit = dfs.cap_hit;
  return std::move(dfs.out);
}

std::vector<std::vector<ActionId>> enumerate_solutions_up_to(const TabularDsmdp& mdp, const SolutionLengthTable& d,
                                                             StateId s, std::size_t max_len, std::size_t cap,
                                                             bool* cap_hit) {
  if (!d.solvable(s) || mdp.is_goal(s)) fail(ErrorCode::support_unsolvable, "state has no solution to enumerate");
  SolutionDfs dfs{mdp, d, max_len, false, cap, {}, {}};
  dfs.visit(s);
  if (cap_hit) *cap_hit = dfs.cap_hit;
  return std::move(dfs.out);
}

}  // namespace dsmdp::metrics
