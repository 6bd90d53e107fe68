#pragma once

#include <string>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp::env {

// Physical dynamics including the goal row; kDead marks an illegal move.
struct MoveTable {
  std::size_t num_states = 0;
  std::size_t num_moves = 0;
  std::vector<StateId> next;  // row-major num_states x num_moves
  std::vector<std::string> labels;

  StateId at(StateId s, std::size_t m) const noexcept { return next[static_cast<std::size_t>(s) * num_moves + m]; }
};

// A scramble move is a sequence of MoveTable moves. Moves sharing a
// non-negative group id may not be applied consecutively.
struct ScrambleMoves {
  std::vector<std::vector<std::size_t>> sequences;
  std::vector<int> group;
};

// Exact law of a scramble: start at the goal, draw K uniformly from
// 1..k_max, apply K moves drawn uniformly among the legal moves (respecting
// the group constraint). Goal mass is removed and the rest renormalized.
StateDistribution scramble_distribution(const TabularDsmdp& mdp, const MoveTable& moves,
                                        const ScrambleMoves& scramble, unsigned k_max);

}  // namespace dsmdp::env
