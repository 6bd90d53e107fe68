#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp {

inline constexpr std::uint32_t kUnsolvable = std::numeric_limits<std::uint32_t>::max();

struct ReverseEdge {
  StateId pred;
  ActionId action;
};

// CSR predecessor lists: edges into t are edges[offsets[t] .. offsets[t+1]).
// Transitions into kDead are dropped.
struct ReverseGraph {
  std::vector<std::uint64_t> offsets;
  std::vector<ReverseEdge> edges;

  std::span<const ReverseEdge> predecessors(StateId t) const noexcept {
    return {edges.data() + offsets[t], static_cast<std::size_t>(offsets[t + 1] - offsets[t])};
  }
};

ReverseGraph build_reverse_graph(const TabularDsmdp& mdp);

// d(s): shortest solution length, kUnsolvable when no solution exists.
struct SolutionLengthTable {
  std::vector<std::uint32_t> d;

  bool solvable(StateId s) const noexcept { return s != kDead && d[s] != kUnsolvable; }
  std::size_t num_solvable() const noexcept;
  std::uint32_t max_finite() const noexcept;
};

SolutionLengthTable shortest_solution_lengths(const TabularDsmdp& mdp);
SolutionLengthTable shortest_solution_lengths(const TabularDsmdp& mdp, const ReverseGraph& rev);

// Throws support_unsolvable if p puts mass on an unsolvable or goal state.
void require_solvable_support(const StateDistribution& p, const TabularDsmdp& mdp,
                              const SolutionLengthTable& d);

// E_p[d].
double mean_solution_length(const StateDistribution& p, const SolutionLengthTable& d);

// Sufficient condition for solution separability: no two distinct states reach
// the same solvable-or-goal state through the same action.
bool check_invertible_transitions(const TabularDsmdp& mdp, const SolutionLengthTable& d);
bool check_invertible_transitions(const TabularDsmdp& mdp);

}  // namespace dsmdp
