#include <array>
#include <cstdint>

#include "dsmdp/core/error.hpp"
#include "dsmdp/env/environment.hpp"

namespace dsmdp::env {

namespace {

// Corner slots: URF UFL ULB UBR DFR DLF DBL DRB. Slot 6 (DBL) never moves.
// A move lists, for each slot, which slot's cubie it receives and the twist
// added to it.
struct CornerMove {
  std::array<int, 8> cp;
  std::array<int, 8> co;
};

constexpr std::array<CornerMove, 3> kMoves{{
    {{1, 5, 2, 3, 0, 4, 6, 7}, {1, 2, 0, 0, 2, 1, 0, 0}},  // F
    {{4, 1, 2, 0, 7, 5, 6, 3}, {2, 0, 0, 1, 1, 0, 0, 2}},  // R
    {{3, 0, 1, 2, 4, 5, 6, 7}, {0, 0, 0, 0, 0, 0, 0, 0}},  // U
}};

constexpr std::size_t kPerms = 5040;
constexpr std::size_t kOris = 729;

constexpr int slot_to_index(int slot) { return slot == 7 ? 6 : slot; }
constexpr int index_to_slot(int index) { return index == 6 ? 7 : index; }

std::size_t factorial(int k) {
  std::size_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::array<int, 8> unrank_perm(std::size_t rank) {
  std::array<int, 7> elems{0, 1, 2, 3, 4, 5, 6};
  std::array<int, 7> perm{};
  int remaining = 7;
  for (int i = 0; i < 7; ++i) {
    const std::size_t f = factorial(6 - i);
    const std::size_t k = rank / f;
    rank %= f;
    perm[i] = elems[k];
    for (int j = static_cast<int>(k); j + 1 < remaining; ++j) elems[j] = elems[j + 1];
    --remaining;
  }
  std::array<int, 8> cp{};
  for (int i = 0; i < 7; ++i) cp[index_to_slot(i)] = index_to_slot(perm[i]);
  cp[6] = 6;
  return cp;
}

std::size_t rank_perm(const std::array<int, 8>& cp) {
  std::array<int, 7> perm{};
  for (int i = 0; i < 7; ++i) perm[i] = slot_to_index(cp[index_to_slot(i)]);
  std::size_t rank = 0;
  for (int i = 0; i < 7; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 7; ++j) smaller += perm[j] < perm[i];
    rank += static_cast<std::size_t>(smaller) * factorial(6 - i);
  }
  return rank;
}

std::array<int, 8> unrank_ori(std::size_t rank) {
  std::array<int, 8> co{};
  int sum = 0;
  for (int i = 0; i < 6; ++i) {
    co[i] = static_cast<int>(rank % 3);
    rank /= 3;
    sum += co[i];
  }
  co[7] = (3 - sum % 3) % 3;
  return co;
}

std::size_t rank_ori(const std::array<int, 8>& co) {
  std::size_t rank = 0;
  for (int i = 5; i >= 0; --i) rank = rank * 3 + static_cast<std::size_t>(co[i]);
  return rank;
}

}  // namespace

MoveTable pocket_cube_moves() {
  std::array<std::array<std::uint16_t, 3>, kPerms> perm_move{};
  std::array<std::array<std::uint16_t, 3>, kOris> ori_move{};
  for (std::size_t r = 0; r < kPerms; ++r) {
    const auto cp = unrank_perm(r);
    for (std::size_t m = 0; m < 3; ++m) {
      std::array<int, 8> out{};
      for (int i = 0; i < 8; ++i) out[i] = cp[kMoves[m].cp[i]];
      perm_move[r][m] = static_cast<std::uint16_t>(rank_perm(out));
    }
  }
  for (std::size_t r = 0; r < kOris; ++r) {
    const auto co = unrank_ori(r);
    for (std::size_t m = 0; m < 3; ++m) {
      std::array<int, 8> out{};
      for (int i = 0; i < 8; ++i) out[i] = (co[kMoves[m].cp[i]] + kMoves[m].co[i]) % 3;
      ori_move[r][m] = static_cast<std::uint16_t>(rank_ori(out));
    }
  }
  MoveTable mt;
  mt.num_states = kPerms * kOris;
  mt.num_moves = 3;
  mt.labels = {"F", "R", "U"};
  mt.next.resize(mt.num_states * 3);
  for (std::size_t p = 0; p < kPerms; ++p)
    for (std::size_t o = 0; o < kOris; ++o)
      for (std::size_t m = 0; m < 3; ++m)
        mt.next[(p * kOris + o) * 3 + m] = static_cast<StateId>(perm_move[p][m] * kOris + ori_move[o][m]);
  return mt;
}

ScrambleMoves pocket_cube_scramble_moves() {
  ScrambleMoves sm;
  for (std::size_t face = 0; face < 3; ++face)
    for (std::size_t turns = 1; turns <= 3; ++turns) {
      sm.sequences.emplace_back(turns, face);
      sm.group.push_back(static_cast<int>(face));
    }
  return sm;
}

Environment build_pocket_cube(unsigned k_max) {
  MoveTable moves = pocket_cube_moves();
  Environment env;
  env.name = "pocket_cube";
  env.mdp = TabularDsmdp(moves.num_states, 3, 0, moves.next, moves.labels);
  env.p = scramble_distribution(env.mdp, moves, pocket_cube_scramble_moves(), k_max);
  return env;
}

}  // namespace dsmdp::env
