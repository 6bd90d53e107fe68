#include "dsmdp/core/graph.hpp"

#include <algorithm>
#include <sstream>

#include "dsmdp/core/error.hpp"

namespace dsmdp {

ReverseGraph build_reverse_graph(const TabularDsmdp& mdp) {
  const std::size_t n = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  ReverseGraph g;
  g.offsets.assign(n + 1, 0);
  const auto table = mdp.table();
  for (StateId t : table)
    if (t != kDead) ++g.offsets[t + 1];
  for (std::size_t i = 0; i < n; ++i) g.offsets[i + 1] += g.offsets[i];
  g.edges.resize(g.offsets[n]);
  std::vector<std::uint64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < na; ++a) {
      const StateId t = table[s * na + a];
      if (t == kDead) continue;
      g.edges[cursor[t]++] = {static_cast<StateId>(s), static_cast<ActionId>(a)};
    }
  }
  return g;
}

std::size_t SolutionLengthTable::num_solvable() const noexcept {
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](std::uint32_t v) { return v != kUnsolvable; }));
}

std::uint32_t SolutionLengthTable::max_finite() const noexcept {
  std::uint32_t m = 0;
  for (std::uint32_t v : d)
    if (v != kUnsolvable) m = std::max(m, v);
  return m;
}

SolutionLengthTable shortest_solution_lengths(const TabularDsmdp& mdp, const ReverseGraph& rev) {
  SolutionLengthTable out;
  out.d.assign(mdp.num_states(), kUnsolvable);
  std::vector<StateId> frontier{mdp.goal()};
  out.d[mdp.goal()] = 0;
  std::vector<StateId> next;
  for (std::uint32_t depth = 1; !frontier.empty(); ++depth) {
    next.clear();
    for (StateId t : frontier) {
      for (const ReverseEdge& e : rev.predecessors(t)) {
        if (out.d[e.pred] == kUnsolvable) {
          out.d[e.pred] = depth;
          next.push_back(e.pred);
        }
      }
    }
    frontier.swap(next);
  }
  return out;
}

SolutionLengthTable shortest_solution_lengths(const TabularDsmdp& mdp) {
  return shortest_solution_lengths(mdp, build_reverse_graph(mdp));
}

void require_solvable_support(const StateDistribution& p, const TabularDsmdp& mdp,
                              const SolutionLengthTable& d) {
  if (p.empty()) fail(ErrorCode::invalid_argument, "empty distribution");
  for (StateId s : p.states()) {
    if (s >= mdp.num_states()) fail(ErrorCode::invalid_argument, "distribution state out of range");
    if (mdp.is_goal(s) || !d.solvable(s)) {
      std::ostringstream os;
      os << "state " << s << (mdp.is_goal(s) ? " is the goal" : " has no solution");
      fail(ErrorCode::support_unsolvable, os.str());
    }
  }
}

double mean_solution_length(const StateDistribution& p, const SolutionLengthTable& d) {
  return p.expectation([&](StateId s) { return static_cast<double>(d.d[s]); });
}

bool check_invertible_transitions(const TabularDsmdp& mdp, const SolutionLengthTable& d) {
  const ReverseGraph rev = build_reverse_graph(mdp);
  std::vector<std::uint32_t> seen(mdp.num_actions(), kUnsolvable);
  for (StateId t = 0; t < mdp.num_states(); ++t) {
    if (!d.solvable(t)) continue;
    for (const ReverseEdge& e : rev.predecessors(t)) {
      if (seen[e.action] == t) return false;
      seen[e.action] = t;
    }
  }
  return true;
}

bool check_invertible_transitions(const TabularDsmdp& mdp) {
  return check_invertible_transitions(mdp, shortest_solution_lengths(mdp));
}

}  // namespace dsmdp
