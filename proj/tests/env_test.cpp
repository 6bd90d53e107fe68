#include <numeric>

#include "doctest.h"
#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/separability.hpp"
#include "dsmdp/env/environment.hpp"
#include "test_util.hpp"

using namespace dsmdp;

namespace {

void check_p_valid(const env::Environment& e) {
  const auto d = shortest_solution_lengths(e.mdp);
  double total = 0.0;
  for (std::size_t i = 0; i < e.p.support_size(); ++i) {
    CHECK(d.solvable(e.p.states()[i]));
    CHECK(!e.mdp.is_goal(e.p.states()[i]));
    total += e.p.probs()[i];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

bool is_permutation_move(const env::MoveTable& mt, std::size_t m) {
  std::vector<char> hit(mt.num_states, 0);
  for (StateId s = 0; s < mt.num_states; ++s) {
    const StateId t = mt.at(s, m);
    if (t == kDead || hit[t]) return false;
    hit[t] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("chain(5)") {
  const auto e = env::build_chain(5);
  CHECK(e.mdp.num_states() == 6);
  REQUIRE(e.p.support_size() == 1);
  CHECK(e.p.states()[0] == 5);
  CHECK(shortest_solution_lengths(e.mdp).d[5] == 5);
  check_p_valid(e);
}

TEST_CASE("cliff walking") {
  const auto e = env::build_cliff_walking();
  check_p_valid(e);
  const StateId start = env::cliff_state(e, 3, 0);
  REQUIRE(e.p.support_size() == 1);
  CHECK(e.p.states()[0] == start);
  const auto d = shortest_solution_lengths(e.mdp);
  // Up, eleven steps right, down.
  CHECK(d.d[start] == 13);
  // Moving right from the start falls into the cliff and returns to the start.
  CHECK(e.mdp.successor(start, parse_actions(e.mdp, "R")[0]) == start);
  // Off-grid moves are no-ops.
  CHECK(e.mdp.successor(start, parse_actions(e.mdp, "L")[0]) == start);
  CHECK(e.mdp.num_states() == 38);
}

TEST_CASE("sequence consume") {
  const auto e = env::build_sequence_consume(2, 2);
  CHECK(e.mdp.num_states() == 7);
  check_p_valid(e);
  CHECK(e.p.support_size() == 6);
  const auto d = shortest_solution_lengths(e.mdp);
  for (StateId s = 0; s < e.mdp.num_states(); ++s) {
    if (e.mdp.is_goal(s)) continue;
    CHECK(d.d[s] == e.state_names[s].size());
  }
  CHECK(check_solution_separable_bruteforce(e.mdp, 6).separable);
  // Length classes are weighted equally by default.
  const auto e3 = env::build_sequence_consume(2, 3);
  const auto d3 = shortest_solution_lengths(e3.mdp);
  double mass[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < e3.p.support_size(); ++i) mass[d3.d[e3.p.states()[i]]] += e3.p.probs()[i];
  CHECK(mass[1] == doctest::Approx(1.0 / 3));
  CHECK(mass[3] == doctest::Approx(1.0 / 3));
}

TEST_CASE("scramble distribution on a chain") {
  const auto e = env::build_chain(3);
  env::ScrambleMoves sc{{{0}}, {-1}};
  const auto p = env::scramble_distribution(e.mdp, env::chain_moves(3), sc, 2);
  REQUIRE(p.support_size() == 2);
  CHECK(p.prob(1) == doctest::Approx(0.5));
  CHECK(p.prob(2) == doctest::Approx(0.5));
}

TEST_CASE("8-puzzle") {
  const auto e = env::build_n_puzzle(3, env::VacuousMode::noop);
  CHECK(e.mdp.num_states() == 181440);
  CHECK(e.p.support_size() == 181439);
  check_p_valid(e);
  CHECK(!check_invertible_transitions(e.mdp));
  const auto death = env::build_n_puzzle(3, env::VacuousMode::death);
  CHECK(check_invertible_transitions(death.mdp));

  // One scramble step from the goal: the blank sits in a corner with two legal moves.
  const auto one = env::build_n_puzzle(3, env::VacuousMode::noop, 1);
  CHECK(one.p.support_size() == 2);
  CHECK(one.p.probs()[0] == doctest::Approx(0.5));
  const auto d = shortest_solution_lengths(one.mdp);
  for (StateId s : one.p.states()) CHECK(d.d[s] == 1);
}

TEST_CASE("2x2 puzzle") {
  const auto e = env::build_n_puzzle(2, env::VacuousMode::noop);
  CHECK(e.mdp.num_states() == 12);
  check_p_valid(e);
}

TEST_CASE("pocket cube") {
  const auto e = env::build_pocket_cube();
  CHECK(e.mdp.num_states() == 3674160);
  CHECK(e.p.support_size() == 3674159);
  check_p_valid(e);
  const auto rev = build_reverse_graph(e.mdp);
  CHECK(rev.edges.size() == (e.mdp.num_states() - 1) * 3);
  const auto d = shortest_solution_lengths(e.mdp, rev);
  CHECK(d.max_finite() >= 11);
  double far = 0.0;
  for (std::size_t i = 0; i < e.p.support_size(); ++i)
    if (d.d[e.p.states()[i]] == 11) far += e.p.probs()[i];
  CHECK(far > 0.0);
  const auto moves = env::pocket_cube_moves();
  for (std::size_t m = 0; m < moves.num_moves; ++m) CHECK(is_permutation_move(moves, m));
}

TEST_CASE("pickup world") {
  const auto cfg = env::parse_pickup_config_string(
      "target: a b\n"
      "grid:\n"
      "######\n"
      "#a.b.#\n"
      "######\n");
  const auto e = env::build_pickup_world(cfg);
  check_p_valid(e);
  CHECK(e.p.support_size() == 4);
  CHECK(e.mdp.num_actions() == 5);
  const auto d = shortest_solution_lengths(e.mdp);
  // From the cell holding 'a': pick, right, right, pick.
  StateId at_a = kDead;
  for (StateId s : e.p.states())
    if (e.state_names[s].rfind("cell=7 ", 0) == 0) at_a = s;
  REQUIRE(at_a != kDead);
  CHECK(d.d[at_a] == 4);
  // Picking 'b' first breaks the target.
  bool has_unsolvable = false;
  for (StateId s = 0; s < e.mdp.num_states(); ++s) has_unsolvable |= !d.solvable(s);
  CHECK(has_unsolvable);

  const auto def = env::build_pickup_world(env::parse_pickup_config_string(env::default_pickup_config_text()));
  check_p_valid(def);
  CHECK(def.mdp.num_states() <= 12 * 12 * 1024);
}

TEST_CASE("pickup config errors") {
  CHECK_THROWS_AS(env::parse_pickup_config_string("target: z\ngrid:\n###\n#a#\n###\n"), Error);
  CHECK_THROWS_AS(env::parse_pickup_config_string("grid:\n###\n"), Error);
}

TEST_CASE("env names") {
  CHECK(env::env_spec_from_name("chain:7").n == 7);
  const auto s = env::env_spec_from_name("seqconsume:3:4");
  CHECK(s.alphabet == 3);
  CHECK(s.max_len == 4);
  CHECK(env::env_name(s) == "seqconsume:3:4");
  CHECK_THROWS_AS(env::env_spec_from_name("nope"), Error);
}
