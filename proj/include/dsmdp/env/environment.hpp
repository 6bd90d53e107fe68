#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/env/pickup_world.hpp"
#include "dsmdp/env/scramble.hpp"

namespace dsmdp::env {

enum class VacuousMode { noop, death };

struct Environment {
  std::string name;
  TabularDsmdp mdp;
  StateDistribution p;
  // Human-readable state names for small environments (empty otherwise).
  std::vector<std::string> state_names;
};

enum class EnvKind { cliff_walking, n_puzzle, pocket_cube, pickup_world, chain, sequence_consume };

struct EnvSpec {
  EnvKind kind = EnvKind::cliff_walking;
  unsigned n = 3;                 // puzzle side or chain length
  unsigned alphabet = 2;          // sequence_consume
  unsigned max_len = 2;           // sequence_consume
  std::vector<double> length_weights;  // sequence_consume, empty = uniform over lengths
  VacuousMode vacuous = VacuousMode::noop;
  unsigned k_max = 0;             // scramble depth, 0 = environment default
  std::optional<PickupWorldConfig> pickup;  // default config when empty
  std::size_t state_budget = 50'000'000;
};

// Preset names: cliff_walking, 8puzzle, 8puzzle_death, pocket_cube, pickup,
// chain:<n>, seqconsume:<alphabet>:<max_len>.
EnvSpec env_spec_from_name(const std::string& name);
std::string env_name(const EnvSpec& spec);

Environment build_env(const EnvSpec& spec);

// 4x12 grid, start bottom-left, goal bottom-right, cliff along the bottom row.
// Actions U R D L; off-grid moves are no-ops; entering the cliff returns the
// agent to the start. Cliff cells are not states.
Environment build_cliff_walking();
StateId cliff_state(const Environment& env, unsigned row, unsigned col);

// Sliding puzzle on an n x n board (n = 2 or 3). Actions move the blank
// U R D L. Vacuous moves are self-loops (noop) or lead to kDead (death).
Environment build_n_puzzle(unsigned n, VacuousMode vacuous, unsigned k_max = 0);
MoveTable n_puzzle_moves(unsigned n, std::vector<std::string>* state_names = nullptr);

// 2x2x2 cube with the down-back-left corner fixed; actions F R U clockwise.
Environment build_pocket_cube(unsigned k_max = 11);
MoveTable pocket_cube_moves();
// Scramble alphabet: each face by 90/180/270 degrees, no face twice in a row.
ScrambleMoves pocket_cube_scramble_moves();

Environment build_pickup_world(const PickupWorldConfig& config, std::size_t state_budget = 50'000'000);

// States 0 (goal) .. n; the single action moves s -> s-1. p is a point mass
// on n.
Environment build_chain(unsigned n);
MoveTable chain_moves(unsigned n);

// States are strings of length 1..max_len over `alphabet` symbols. Action x
// consumes the first symbol when it equals x and kills the agent otherwise.
// p is uniform within each length class; class weights default to uniform.
Environment build_sequence_consume(unsigned alphabet, unsigned max_len,
                                   const std::vector<double>& length_weights = {});

}  // namespace dsmdp::env
