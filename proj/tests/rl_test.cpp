#include <cmath>

#include "doctest.h"
#include "dsmdp/core/error.hpp"
#include "dsmdp/env/environment.hpp"
#include "dsmdp/rl/agents.hpp"
#include "dsmdp/rl/environment_runner.hpp"
#include "dsmdp/rl/planner.hpp"
#include "dsmdp/rl/sample_complexity.hpp"
#include "dsmdp/skills/augment.hpp"

using namespace dsmdp;
using namespace dsmdp::rl;

namespace {

RunRecord series(std::initializer_list<std::pair<std::uint64_t, double>> pts) {
  RunRecord r;
  for (auto [steps, reward] : pts) r.samples.push_back({steps, reward, 1.0 - reward});
  return r;
}

}  // namespace

TEST_CASE("sample complexity averaging rule") {
  const Threshold t{Criterion::reward_at_least, 0.95};
  CHECK(measure_sample_complexity(series({{500, 0.1}, {1000, 0.96}, {1500, 0.99}}), t) == 1000.0);
  CHECK(measure_sample_complexity(series({{1000, 0.96}, {2000, 0.5}, {3000, 0.97}}), t) == 2000.0);
  CHECK(!measure_sample_complexity(series({{1000, 0.2}, {2000, 0.5}}), t).has_value());
  CHECK_THROWS_AS(measure_sample_complexity(RunRecord{}, t), Error);
  const Threshold e{Criterion::value_error_at_most, 0.05};
  CHECK(measure_sample_complexity(series({{100, 0.5}, {200, 0.97}}), e) == 200.0);
}

TEST_CASE("ground-truth values") {
  const auto chain = env::build_chain(4);
  const RlEnvironment env(chain.mdp, chain.p, 0.9);
  CHECK(env.v_star(0) == 1.0);
  CHECK(env.v_star(1) == doctest::Approx(1.0));
  CHECK(env.v_star(4) == doctest::Approx(std::pow(0.9, 3)));
  CHECK(env.q_star(1, 0) == 1.0);
  CHECK(env.q_star(3, 0) == doctest::Approx(0.9 * 0.9));
  CHECK(env.v_star(kDead) == 0.0);
}

TEST_CASE("skill costs are charged in base actions") {
  const auto cliff = env::build_cliff_walking();
  const auto z = skills::macros_from_strings(cliff.mdp, {"URRRRRRRRRRRD"});
  const RlEnvironment env(cliff.mdp, z, cliff.p);
  const StateId start = cliff.p.states()[0];
  CHECK(env.num_actions() == 5);
  CHECK(env.next(start, 4) == env.goal());
  CHECK(env.cost(start, 4) == 13);
  CHECK(env.cost(start, 0) == 1);
}

TEST_CASE("q-learning on a chain") {
  const auto chain = env::build_chain(5);
  const RlEnvironment env(chain.mdp, chain.p);
  for (auto alg : {Algorithm::q_learning, Algorithm::rl_value_iteration}) {
    auto cfg = rl_preset("chain");
    cfg.algorithm = alg;
    cfg.seed = 3;
    const auto r = run(env, cfg);
    CHECK(r.converged);
    REQUIRE(!r.samples.empty());
    CHECK(r.samples.back().test_reward >= cfg.stop_reward);
    CHECK(r.final_epsilon >= 0.1);
    CHECK(r.final_epsilon <= 1.0);
  }
}

TEST_CASE("runs are deterministic given the seed") {
  const auto cliff = env::build_cliff_walking();
  const RlEnvironment env(cliff.mdp, cliff.p);
  for (auto alg : {Algorithm::q_learning, Algorithm::rl_value_iteration, Algorithm::reinforce}) {
    auto cfg = rl_preset("cliff_walking");
    cfg.algorithm = alg;
    cfg.seed = 11;
    cfg.max_env_steps = 100'000;
    const auto a = run(env, cfg), b = run(env, cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].env_steps == b.samples[i].env_steps);
      CHECK(a.samples[i].test_reward == b.samples[i].test_reward);
    }
    CHECK(a.terminal_env_steps == b.terminal_env_steps);
    CHECK(a.episodes == b.episodes);
  }
}

TEST_CASE("cliff walking q-learning reaches the threshold across seeds") {
  const auto cliff = env::build_cliff_walking();
  const RlEnvironment env(cliff.mdp, cliff.p);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto cfg = rl_preset("cliff_walking");
    cfg.seed = seed;
    const auto r = run(env, cfg);
    const auto n = measure_sample_complexity(r, {Criterion::reward_at_least, 0.95});
    REQUIRE(n.has_value());
    CHECK(*n > 0.0);
    CHECK(r.final_epsilon >= 0.1);
    // Evaluations are monotone in env steps and never exceed the cap.
    for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i].env_steps > r.samples[i - 1].env_steps);
    CHECK(r.terminal_env_steps <= cfg.max_env_steps + 2 * cfg.horizon * 100);
  }
}

TEST_CASE("greedy reward of the optimal policy") {
  const auto chain = env::build_chain(5);
  const RlEnvironment env(chain.mdp, chain.p);
  CHECK(greedy_reward_exact(env, [](StateId) { return ActionId{0}; }, 50, 100) == 1.0);
  CHECK(greedy_reward_exact(env, [](StateId) { return ActionId{0}; }, 3, 100) == 0.0);
}

TEST_CASE("config validation and presets") {
  auto cfg = rl_preset("default");
  CHECK(cfg.alpha == 0.1);
  CHECK(cfg.horizon == 50);
  CHECK(cfg.base_action_budget == 100);
  CHECK(cfg.epsilon_floor == 0.1);
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_THROWS(rl_preset("nope"));
  CHECK(algorithm_from_string("q_learning") == Algorithm::q_learning);
}

TEST_CASE("planner with alpha 1 reaches exact values at sweep d") {
  const auto chain = env::build_chain(20);
  const auto first = first_exact_sweeps(chain.mdp, 1.0, 100);
  for (StateId s = 1; s <= 20; ++s) {
    REQUIRE(first[s].has_value());
    CHECK(*first[s] == s);
  }
  // Unsolvable states never get there.
  const TabularDsmdp m(3, 1, 0, {kDead, 0, kDead});
  CHECK(!first_exact_sweeps(m, 1.0, 50)[2].has_value());
}

TEST_CASE("planner sweep counts scale like (d + log(1/eps)) / alpha") {
  const auto chain = env::build_chain(20);
  for (auto v : {PlannerVariant::state, PlannerVariant::q}) {
    PlannerOptions o;
    o.variant = v;
    o.alpha = 0.1;
    o.stop_error = 0.05;
    const auto r = planner_value_iteration(chain.mdp, chain.p, o);
    REQUIRE(r.sweeps_to_error.has_value());
    const double scale = (20.0 + std::log(1.0 / 0.05)) / 0.1;
    CHECK(static_cast<double>(*r.sweeps_to_error) >= scale / 4);
    CHECK(static_cast<double>(*r.sweeps_to_error) <= scale * 4);
  }
}

TEST_CASE("trivial augmentation leaves planner sweeps unchanged") {
  const auto cliff = env::build_cliff_walking();
  const auto aug = skills::augment(cliff.mdp, {});
  for (auto v : {PlannerVariant::state, PlannerVariant::q}) {
    PlannerOptions o;
    o.variant = v;
    const auto a = planner_value_iteration(cliff.mdp, cliff.p, o);
    const auto b = planner_value_iteration(aug.table, cliff.p, o);
    CHECK(a.sweeps_to_error == b.sweeps_to_error);
    CHECK(a.sweeps_to_reward == b.sweeps_to_reward);
  }
  PlannerOptions tight;
  tight.max_sweeps = 3;
  CHECK_THROWS_AS(planner_value_iteration(cliff.mdp, cliff.p, tight), NotConverged);
}
