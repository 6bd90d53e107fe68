#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dsmdp/rl/environment_runner.hpp"

namespace dsmdp::rl {

enum class Algorithm { q_learning, rl_value_iteration, reinforce };
const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct RlConfig {
  Algorithm algorithm = Algorithm::q_learning;
  double alpha = 0.1;
  double gamma = 1.0;
  std::size_t horizon = 50;
  std::size_t base_action_budget = 100;
  std::size_t replay_size = 1000;
  std::size_t update_every = 4;  // episodes
  std::size_t batch = 32;
  double epsilon_start = 1.0;
  double epsilon_step = 0.002;
  double reward_trigger = 0.002;
  double epsilon_floor = 0.1;
  std::size_t eval_episodes = 200;
  // Evaluate after the first update at or past each multiple; 0 evaluates
  // after every update.
  std::uint64_t eval_every = 2000;
  std::uint64_t max_env_steps = 5'000'000;
  double stop_reward = 0.95;
  double stop_value_error = 0.025;
  std::uint64_t seed = 0;

  void validate() const;
};

// Appendix-C defaults with per-environment evaluation and stopping settings:
// "default", "cliff_walking", "pickup", "8puzzle", "pocket_cube", "chain".
RlConfig rl_preset(const std::string& name);

struct RunSample {
  std::uint64_t env_steps = 0;
  double test_reward = 0.0;
  double value_error = 0.0;  // NaN for REINFORCE
};

struct RunRecord {
  std::vector<RunSample> samples;
  bool converged = false;
  std::uint64_t terminal_env_steps = 0;
  std::uint64_t episodes = 0;
  double final_epsilon = 1.0;
};

RunRecord run(const RlEnvironment& env, const RlConfig& cfg);

// Greedy rollout success weighted by gamma^(steps-1), averaged over the
// support of p (exact, no sampling). Used by tests and planners.
double greedy_reward_exact(const RlEnvironment& env, const std::function<ActionId(StateId)>& policy,
                           std::size_t horizon, std::size_t budget);

}  // namespace dsmdp::rl
