#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/env/environment.hpp"

namespace dsmdp::env {

namespace {

using Board = std::uint64_t;  // 4 bits per cell, 0 = blank

unsigned tile(Board b, unsigned i) { return static_cast<unsigned>((b >> (4 * i)) & 0xF); }
Board with_tile(Board b, unsigned i, unsigned t) {
  return (b & ~(Board{0xF} << (4 * i))) | (Board{t} << (4 * i));
}

std::string board_name(Board b, unsigned cells) {
  std::string s;
  for (unsigned i = 0; i < cells; ++i) s += static_cast<char>('0' + tile(b, i));
  return s;
}

}  // namespace

MoveTable n_puzzle_moves(unsigned n, std::vector<std::string>* state_names) {
  if (n < 2 || n > 3) fail(ErrorCode::invalid_argument, "n_puzzle supports n = 2 or 3");
  const unsigned cells = n * n;
  Board goal = 0;
  for (unsigned i = 0; i + 1 < cells; ++i) goal = with_tile(goal, i, i + 1);
  constexpr int dr[4] = {-1, 0, 1, 0};
  constexpr int dc[4] = {0, 1, 0, -1};

  std::unordered_map<Board, StateId> index;
  std::vector<Board> boards{goal};
  std::vector<unsigned> blank{cells - 1};
  index.emplace(goal, 0);
  MoveTable mt;
  mt.num_moves = 4;
  mt.labels = {"U", "R", "D", "L"};
  for (std::size_t head = 0; head < boards.size(); ++head) {
    const Board b = boards[head];
    const unsigned z = blank[head];
    const int r = static_cast<int>(z / n), c = static_cast<int>(z % n);
    for (int a = 0; a < 4; ++a) {
      const int nr = r + dr[a], nc = c + dc[a];
      if (nr < 0 || nr >= static_cast<int>(n) || nc < 0 || nc >= static_cast<int>(n)) {
        mt.next.push_back(kDead);
        continue;
      }
      const unsigned nz = static_cast<unsigned>(nr) * n + static_cast<unsigned>(nc);
      const Board nb = with_tile(with_tile(b, z, tile(b, nz)), nz, 0);
      auto [it, inserted] = index.emplace(nb, static_cast<StateId>(boards.size()));
      if (inserted) {
        boards.push_back(nb);
        blank.push_back(nz);
      }
      mt.next.push_back(it->second);
    }
  }
  mt.num_states = boards.size();
  if (state_names) {
    state_names->clear();
    for (Board b : boards) state_names->push_back(board_name(b, cells));
  }
  return mt;
}

Environment build_n_puzzle(unsigned n, VacuousMode vacuous, unsigned k_max) {
  Environment env;
  const MoveTable moves = n_puzzle_moves(n, n <= 2 ? &env.state_names : nullptr);
  std::vector<StateId> table(moves.next.size());
  for (std::size_t s = 0; s < moves.num_states; ++s)
    for (std::size_t a = 0; a < 4; ++a) {
      const StateId t = moves.at(static_cast<StateId>(s), a);
      table[s * 4 + a] = t != kDead ? t : (vacuous == VacuousMode::noop ? static_cast<StateId>(s) : kDead);
    }
  env.name = std::to_string(n * n - 1) + "puzzle" + (vacuous == VacuousMode::death ? "_death" : "");
  env.mdp = TabularDsmdp(moves.num_states, 4, 0, std::move(table), moves.labels);
  if (k_max == 0) {
    // Default scramble depth is the diameter of the move graph (31 for 3x3).
    TabularDsmdp legal(moves.num_states, 4, 0, moves.next, moves.labels);
    k_max = shortest_solution_lengths(legal).max_finite();
  }
  ScrambleMoves scramble{{{0}, {1}, {2}, {3}}, {-1, -1, -1, -1}};
  env.p = scramble_distribution(env.mdp, moves, scramble, k_max);
  return env;
}

}  // namespace dsmdp::env
