#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp::rl {

enum class PlannerVariant { state, q };
const char* to_string(PlannerVariant v);

struct PlannerOptions {
  PlannerVariant variant = PlannerVariant::state;
  double alpha = 0.1;
  double stop_reward = 0.95;
  double stop_error = 0.01;
  std::size_t horizon = 50;
  std::size_t max_sweeps = 100'000;
};

struct PlannerResult {
  std::optional<std::size_t> sweeps_to_reward;  // greedy p-weighted success >= stop_reward
  std::optional<std::size_t> sweeps_to_error;   // p-weighted mean |V - V*| (or |Q - Q*|) <= stop_error
  std::size_t sweeps = 0;
};

// Synchronous sweeps V(s) <- (1 - alpha) V(s) + alpha max_a V(T(s, a)) with
// gamma = 1, V(goal) = 1, V(dead) = 0; the Q variant bootstraps through
// max_a' Q(T(s, a), a') with Q = 1 into the goal. Stops once both criteria
// are met; throws NotConverged when max_sweeps pass before either is.
PlannerResult planner_value_iteration(const TabularDsmdp& mdp, const StateDistribution& p,
                                      const PlannerOptions& options = {});

// For alpha = 1: the first sweep at which each state's value equals 1
// exactly (nullopt if never within max_sweeps).
std::vector<std::optional<std::size_t>> first_exact_sweeps(const TabularDsmdp& mdp, double alpha,
                                                           std::size_t max_sweeps);

}  // namespace dsmdp::rl
