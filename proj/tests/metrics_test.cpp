#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/random_mdp.hpp"
#include "dsmdp/env/environment.hpp"
#include "dsmdp/metrics/assignment.hpp"
#include "dsmdp/metrics/difficulty.hpp"
#include "dsmdp/metrics/incompressibility.hpp"
#include "dsmdp/metrics/q_solver.hpp"
#include "dsmdp/metrics/report.hpp"
#include "dsmdp/metrics/solution_counts.hpp"
#include "dsmdp/metrics/stochastic.hpp"
#include "dsmdp/metrics/tightness.hpp"
#include "dsmdp/skills/augment.hpp"
#include "test_util.hpp"

using namespace dsmdp;
using namespace dsmdp::metrics;
using testutil::make_mdp;

namespace {

// Forward propagation of sequence counts: mass reaching the goal at exactly
// step l, weighted ((1 - delta) / |A|)^l, truncated at max_len.
double q_oracle(const TabularDsmdp& m, StateId s, double delta, std::size_t max_len) {
  if (m.is_goal(s)) return 1.0;
  const double w = (1.0 - delta) / static_cast<double>(m.num_actions());
  std::vector<double> cur(m.num_states(), 0.0), next(m.num_states());
  cur[s] = 1.0;  // weighted mass of surviving prefixes
  double q = 0.0;
  for (std::size_t l = 1; l <= max_len; ++l) {
    std::fill(next.begin(), next.end(), 0.0);
    double hit = 0.0;
    for (StateId t = 0; t < m.num_states(); ++t) {
      if (cur[t] == 0.0) continue;
      for (StateId u : m.row(t)) {
        if (u == kDead) continue;
        if (m.is_goal(u)) hit += cur[t];
        else next[u] += cur[t];
      }
    }
    q += hit * w;
    for (StateId t = 0; t < m.num_states(); ++t) cur[t] = next[t] * w;
  }
  return q;
}

// Length-l solutions of s, counted by DFS pruned with d.
std::uint64_t count_paths(const TabularDsmdp& m, const SolutionLengthTable& d, StateId s, std::size_t l) {
  if (l == 0) return m.is_goal(s) ? 1 : 0;
  if (m.is_goal(s) || !d.solvable(s) || d.d[s] > l) return 0;
  std::uint64_t total = 0;
  for (StateId t : m.row(s))
    if (t != kDead) total += count_paths(m, d, t, l - 1);
  return total;
}

double merged_entropy_oracle(const std::vector<double>& probs, const std::vector<std::vector<std::uint32_t>>& adj,
                             std::size_t num_right, bool maximize) {
  double best = maximize ? -1.0 : 1e300;
  std::vector<std::uint32_t> pick(probs.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == probs.size()) {
      std::vector<double> mass(num_right, 0.0);
      for (std::size_t k = 0; k < probs.size(); ++k) mass[pick[k]] += probs[k];
      double h = 0.0;
      for (double x : mass)
        if (x > 0) h -= x * std::log(x);
      best = maximize ? std::max(best, h) : std::min(best, h);
      return;
    }
    for (std::uint32_t r : adj[i]) {
      pick[i] = r;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("q: one-step state and chain") {
  const auto m = make_mdp(3, 0, {{}, {0, 0, 0}});
  CHECK(solve_q(m, 0.1).q[1] == doctest::Approx(0.9).epsilon(1e-12));
  const auto chain = env::build_chain(6).mdp;
  const auto q = solve_q(chain, 0.05);
  for (StateId s = 0; s <= 6; ++s) CHECK(q.q[s] == doctest::Approx(std::pow(0.95, s)).epsilon(1e-12));
  CHECK(q.at(kDead) == 0.0);
}

TEST_CASE("q matches the sequence-enumeration oracle") {
  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const auto m = random_dsmdp(rng, 4 + t % 5, 2 + t % 2, 0.2);
    const double delta = 0.1;
    const auto q = solve_q(m, delta);
    for (StateId s = 0; s < m.num_states(); ++s) CHECK(std::abs(q.q[s] - q_oracle(m, s, delta, 400)) < 1e-9);
  }
}

TEST_CASE("q solver reports non-convergence") {
  // A self-loop at delta = 0 converges only geometrically.
  const auto m = make_mdp(2, 0, {{}, {0, 1}, {1, kDead}});
  QSolveOptions o;
  o.max_iter = 5;
  CHECK_THROWS_AS(solve_q(m, 0.0, o), NotConverged);
}

TEST_CASE("cliff walking difficulty") {
  const auto e = env::build_cliff_walking();
  CHECK(p_learning_difficulty(e.mdp, e.p) == doctest::Approx(52.0));
  const auto q = solve_q(e.mdp, 0.02);
  const double je = p_exploration_difficulty(e.p, q);
  CHECK(je == doctest::Approx(-std::log(q.q[e.p.states()[0]])));
  // Regression constant from the first computation.
  CHECK(je == doctest::Approx(5.7963427708).epsilon(1e-9));
  // Point mass: geometric and arithmetic versions agree.
  CHECK(p_exploration_difficulty_arithmetic(e.p, q) == doctest::Approx(je).epsilon(1e-12));
}

TEST_CASE("chain at delta zero") {
  const auto e = env::build_chain(4);
  CHECK(p_exploration_difficulty(e.p, solve_q(e.mdp, 0.0)) == doctest::Approx(0.0));
}

TEST_CASE("arithmetic exploration difficulty dominates the geometric one") {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto m = random_dsmdp(rng, 12, 3, 0.1);
    const auto d = shortest_solution_lengths(m);
    const auto p = random_solvable_distribution(rng, m, d, 6);
    if (!p) continue;
    const auto q = solve_q(m, d, 0.05);
    CHECK(p_exploration_difficulty_arithmetic(*p, q) >= p_exploration_difficulty(*p, q) - 1e-12);
  }
}

TEST_CASE("combined difficulty endpoints") {
  CHECK(log_combined_difficulty(10.0, 3.0, 1.0) == doctest::Approx(std::log(10.0)));
  CHECK(log_combined_difficulty(10.0, 3.0, 0.0) == doctest::Approx(3.0));
  CHECK(log_combined_difficulty(10.0, 800.0, 0.5) == doctest::Approx(800.0 + std::log(0.5)));
}

TEST_CASE("solution density") {
  for (unsigned L : {2u, 4u, 6u}) {
    const auto e = env::build_sequence_consume(2, L);
    const double delta = 0.1;
    const auto q = solve_q(e.mdp, delta);
    double expected = 0.0;
    for (unsigned l = 1; l <= L; ++l) expected += delta * std::pow(1 - delta, l - 1);
    CHECK(solution_density(e.mdp, q, shortest_solution_lengths(e.mdp)) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK_THROWS_AS(solution_density_weight(solve_q(env::build_chain(2).mdp, 0.0), 1), Error);

  // Many skills sending every state straight to the goal.
  const auto base = env::build_chain(8).mdp;
  std::vector<skills::Skill> z;
  std::vector<std::vector<ActionId>> per(9);
  for (StateId s = 1; s <= 8; ++s) per[s].assign(s, 0);
  for (int k = 0; k < 1000; ++k) z.push_back(skills::Skill::tabular(per));
  const auto aug = skills::augment(base, z);
  const double delta = 0.02;
  const double dens = solution_density(aug.table, solve_q(aug.table, delta), shortest_solution_lengths(aug.table));
  CHECK(dens == doctest::Approx(delta * 8).epsilon(0.01));
}

TEST_CASE("density of separable MDPs is at most one") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_invertible_dsmdp(rng, 5 + t % 20, 2 + t % 3, 0.1);
    for (double delta : {0.01, 0.1, 0.5}) {
      const auto q = solve_q(m, delta);
      CHECK(solution_density(m, q, shortest_solution_lengths(m)) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("incompressibility examples") {
  EpsilonSpec boundary{EpsilonMode::boundary_limit};
  CHECK(ic_from_stats(0.0, 13.0, 4.0, boundary).value == doctest::Approx(1.0 / 13));
  const auto fixed = ic_from_stats(0.0, 13.0, 4.0, EpsilonSpec{});
  CHECK(fixed.value == 0.0);
  CHECK(fixed.clamped);
  CHECK(fixed.raw < 0.0);
  const auto sup = ic_from_stats(0.0, 13.0, 4.0, EpsilonSpec{EpsilonMode::sup_grid});
  CHECK(sup.value == doctest::Approx(1.0 / 13));
  CHECK(sup.at_boundary);
  const auto half = ic_from_stats(0.0, 13.0, 4.0, EpsilonSpec{EpsilonMode::sup_grid, 0.02, 0.5});
  CHECK(half.value == 0.0);
  CHECK_THROWS_AS(ic_from_stats(1.0, 1.0, 1.0, EpsilonSpec{}), Error);
}

TEST_CASE("sup matches a dense epsilon sweep") {
  const double h = std::log(2.0);
  double best = 1.0;  // limit as epsilon -> 1 is 1 / E[d] = 1
  for (double eps = 1e-5; eps < 1.0; eps += 1e-5) best = std::max(best, ic_at_epsilon(h, 1.0, 2.0, eps));
  const auto sup = ic_from_stats(h, 1.0, 2.0, EpsilonSpec{EpsilonMode::sup_grid});
  CHECK(std::abs(sup.value - best) < 1e-6);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const double H = 4 * u(rng), md = 1 + 6 * u(rng), af = 2 + 5 * u(rng);
    // Dense sweep in logit space so tiny epsilons are covered.
    double oracle = ic_at_epsilon(H, md, af, 0.5);
    for (double x = -40.0; x <= 0.0; x += 1e-4) oracle = std::max(oracle, ic_at_epsilon(H, md, af, 1.0 / (1.0 + std::exp(-x))));
    const auto v = ic_from_stats(H, md, af, EpsilonSpec{EpsilonMode::sup_grid, 0.02, 0.5});
    CHECK(std::abs(v.raw - oracle) < 1e-6);
    CHECK(v.raw >= oracle - 1e-12);
    const auto open = ic_from_stats(H, md, af, EpsilonSpec{EpsilonMode::sup_grid});
    CHECK(open.raw >= 1.0 / md - 1e-12);
  }
}

TEST_CASE("incompressibility of the benchmark environments") {
  EpsilonSpec half{EpsilonMode::sup_grid, 0.02, 0.5};
  const auto cliff = env::build_cliff_walking();
  CHECK(ic_unmerged(cliff.mdp, cliff.p, half).value == 0.0);
  const auto puzzle = env::build_n_puzzle(3, env::VacuousMode::noop);
  const auto ic8 = ic_unmerged(puzzle.mdp, puzzle.p, half);
  CHECK(ic8.value == doctest::Approx(0.5157).epsilon(5e-5 / 0.5157));
  CHECK(ic8.value == doctest::Approx(0.515723725504).epsilon(1e-9));
}

TEST_CASE("merged incompressibility") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto base = random_invertible_dsmdp(rng, 12, 2, 0.05);
    const auto d = shortest_solution_lengths(base);
    const auto p = random_solvable_distribution(rng, base, d, 6);
    if (!p) continue;
    const auto aug = skills::augment_with_macros(base, {"a0 a1", "a1 a1 a0"});
    for (const auto& spec : {EpsilonSpec{}, EpsilonSpec{EpsilonMode::sup_grid}}) {
      const auto merged = ic_merged(base, aug.table, *p, spec);
      CHECK(merged.merged_entropy == doctest::Approx(p->entropy()).epsilon(1e-12));
      CHECK(merged.ic.value == doctest::Approx(ic_unmerged(base, *p, spec).value).epsilon(1e-12));
    }
  }

  // One skill solves every support state: all solutions merge.
  const auto base = make_mdp(2, 0, {{}, {0, kDead}, {1, kDead}, {2, kDead}});
  std::vector<std::vector<ActionId>> per{{}, {0}, {0, 0}, {0, 0, 0}};
  const auto aug = skills::augment(base, {skills::Skill::tabular(per)});
  std::vector<StateId> sup{2, 3};
  const auto p = StateDistribution::uniform(sup);
  const auto merged = ic_merged(base, aug.table, p, EpsilonSpec{EpsilonMode::sup_grid, 0.02, 0.5});
  CHECK(merged.merged_entropy == 0.0);
  CHECK(merged.ic.value == 0.0);
  CHECK(ic_merged(base, aug.table, p, EpsilonSpec{}).ic.value == 0.0);
}

TEST_CASE("entropy assignment agrees with exhaustive enumeration") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t nl = 1 + rng() % 7, nr = 1 + rng() % 4;
    std::vector<double> probs(nl);
    double tot = 0;
    for (auto& x : probs) tot += (x = 0.1 + static_cast<double>(rng() % 100));
    for (auto& x : probs) x /= tot;
    std::vector<std::vector<std::uint32_t>> adj(nl);
    for (auto& a : adj) {
      for (std::uint32_t r = 0; r < nr; ++r)
        if (rng() % 2) a.push_back(r);
      if (a.empty()) a.push_back(static_cast<std::uint32_t>(rng() % nr));
    }
    const auto mx = max_entropy_assignment(probs, adj, nr);
    const auto mn = min_entropy_assignment(probs, adj, nr);
    CHECK(mx.entropy == doctest::Approx(merged_entropy_oracle(probs, adj, nr, true)).epsilon(1e-12));
    CHECK(mn.entropy == doctest::Approx(merged_entropy_oracle(probs, adj, nr, false)).epsilon(1e-12));
  }
  // Three states, two solutions.
  const std::vector<double> probs{0.5, 0.3, 0.2};
  const std::vector<std::vector<std::uint32_t>> adj{{0, 1}, {0, 1}, {0, 1}};
  CHECK(max_entropy_assignment(probs, adj, 2).entropy == doctest::Approx(std::log(2.0)));
  CHECK(max_bipartite_matching(adj, 2) == 2);
}

TEST_CASE("expressive incompressibility") {
  Rng rng(19);
  const auto base = random_invertible_dsmdp(rng, 15, 3, 0.05);
  const auto d = shortest_solution_lengths(base);
  auto p = random_solvable_distribution(rng, base, d, 8);
  REQUIRE(p);
  EpsilonSpec fixed{EpsilonMode::fixed_epsilon, 0.3};
  const auto e1 = ic_expressive(base, *p, 1.0, fixed);
  CHECK(e1.ic.value == doctest::Approx(ic_unmerged(base, *p, fixed).value).epsilon(1e-12));
  CHECK(e1.min_entropy == doctest::Approx(p->entropy()));
  const double h = p->entropy(), md = mean_solution_length(*p, d);
  CHECK(e1.ic.raw == doctest::Approx(ic_at_epsilon(h, md, 3.0, 0.3)));
  const auto e2 = ic_expressive(base, *p, 2.0, fixed);
  if (e1.ic.raw > 0) CHECK(e2.ic.raw < e1.ic.raw);
}

TEST_CASE("per-length counts") {
  const auto chain = env::build_chain(5).mdp;
  const auto c = per_length_counts(chain, 8);
  for (StateId s = 0; s <= 5; ++s)
    for (std::size_t l = 0; l <= 8; ++l) CHECK(c.at(s, l) == (l == s ? 1u : 0u));
  CHECK(per_length_counts(make_mdp(2, 0, {{}, {0, 0}}), 2).at(1, 1) == 2);

  const auto e = env::build_cliff_walking();
  const auto d = shortest_solution_lengths(e.mdp);
  const StateId start = e.p.states()[0];
  const auto cc = per_length_counts(e.mdp, 17);
  for (std::size_t l = 13; l <= 17; ++l) CHECK(cc.at(start, l) == count_paths(e.mdp, d, start, l));
  CHECK(cc.at(start, 13) == 1);

  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_dsmdp(rng, 8, 2, 0.1);
    const double delta = 0.2;
    const auto cnt = per_length_counts(m, 200);
    const auto rq = reconstruct_q(cnt, 2, m.goal(), delta);
    const auto q = solve_q(m, delta);
    for (StateId s = 0; s < m.num_states(); ++s) CHECK(std::abs(rq[s] - q.q[s]) <= std::pow(1 - delta, 200) + 1e-10);
    CHECK(q_tilde(cnt, 2, m.goal(), 0) == 1.0);
  }
  CHECK_THROWS_AS(per_length_counts(chain, 10, 5), Error);
}

TEST_CASE("tightness construction approaches the entropy bound") {
  Rng rng(31);
  const auto base = random_invertible_dsmdp(rng, 20, 2, 0.0);
  const auto d = shortest_solution_lengths(base);
  std::vector<StateId> solvable;
  for (StateId s = 0; s < 20; ++s)
    if (!base.is_goal(s) && d.solvable(s)) solvable.push_back(s);
  REQUIRE(solvable.size() >= 10);
  const auto p = StateDistribution::uniform(solvable);
  const double delta = 0.5;
  const double bound = p.entropy() - std::log((1 - delta) / delta);
  double prev = 1e300;
  for (std::size_t K : {10u, 100u, 1000u}) {
    const auto t = tightness_augmentation(base, p, delta, K);
    CHECK(t.augmented.table.num_actions() == 2 + K);
    const auto q = solve_q(t.augmented.table, delta);
    const double je = p_exploration_difficulty(p, q);
    CHECK(je >= bound - 1e-9);
    CHECK(je <= prev + 1e-12);
    prev = je;
    if (K == 1000) {
      CHECK(je - bound < 0.05);
      const auto m = ic_merged(base, t.augmented.table, p, EpsilonSpec{});
      CHECK(m.method == AssignmentMethod::matching_exact);
      CHECK(m.merged_entropy == doctest::Approx(p.entropy()));
    }
  }
  CHECK(tightness_fraction(0.1, 0.5) == doctest::Approx(0.05 / (0.5 - 0.05)));
  CHECK_THROWS_AS(tightness_augmentation(base, p, 0.01, 10), Error);
}

TEST_CASE("stochastic depth") {
  const auto chain = env::build_chain(4);
  const auto sm = to_stochastic(chain.mdp);
  CHECK(stochastic_weighted_depth(sm, 3, 10, 1e-9).depth == doctest::Approx(3.0));
  CHECK(stochastic_learning_difficulty(sm, chain.p, 10, 1e-9) == doctest::Approx(4.0));

  StochasticMdp coin{2, 1, 0, {}};
  coin.outcomes = {{}, {{0, 0.5}, {1, 0.5}}};
  coin.validate();
  const std::size_t n = 30;
  const auto w = stochastic_weighted_depth(coin, 1, n, 1e-6);
  CHECK(w.truncated);
  CHECK(w.depth == doctest::Approx(2.0 - (n + 2.0) / std::pow(2.0, n)).epsilon(1e-12));
  CHECK_THROWS_AS(stochastic_weighted_depth(coin, 1, 5, 1e-6), Error);
  CHECK(stochastic_q(coin, 0.0).q[1] == doctest::Approx(1.0).epsilon(1e-9));

  // Action 0 solves surely in one step; action 1 self-loops.
  StochasticMdp sure{2, 2, 0, {}};
  sure.outcomes = {{}, {}, {{0, 1.0}}, {{1, 1.0}}};
  sure.validate();
  CHECK(stochastic_weighted_depth(sure, 1, 10, 1e-9).depth == doctest::Approx(1.0));
  CHECK(stochastic_q(sure, 0.1).q[1] == doctest::Approx(0.45 / (1 - 0.45)));
}

TEST_CASE("difficulty report") {
  const auto e = env::build_cliff_walking();
  const auto r = difficulty_report(e.mdp, e.p);
  CHECK(r.j_learn == doctest::Approx(52.0));
  CHECK(r.mean_d == doctest::Approx(13.0));
  CHECK(r.entropy_p == 0.0);
  REQUIRE(r.ic_boundary);
  CHECK(r.ic_boundary->value == doctest::Approx(1.0 / 13));
  CHECK(r.ic_sup_half->value == 0.0);
  const auto aug = skills::augment_with_macros(e.mdp, {"URRRRRRRRRRRD"}, skills::GoalPassMode::success);
  const auto ra = difficulty_report(e.mdp, aug, e.p);
  CHECK(ra.j_learn == doctest::Approx(5.0));
  CHECK(ra.mean_d == doctest::Approx(1.0));
  CHECK(ra.goal_pass_mode == "success");
}
