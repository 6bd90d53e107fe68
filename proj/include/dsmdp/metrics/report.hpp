#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/metrics/incompressibility.hpp"
#include "dsmdp/metrics/q_solver.hpp"
#include "dsmdp/skills/augment.hpp"

namespace dsmdp::metrics {

struct DifficultyOptions {
  double delta = 0.02;
  EpsilonSpec fixed{EpsilonMode::fixed_epsilon, 0.02, 1.0, 2001};
  EpsilonSpec sup{EpsilonMode::sup_grid, 0.02, 1.0, 2001};
  EpsilonSpec sup_half{EpsilonMode::sup_grid, 0.02, 0.5, 2001};
  bool merged = true;
  MergeLimits merge;
  QSolveOptions q;
  bool keep_arrays = false;
};

struct DifficultyReport {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  std::size_t base_action_count = 0;
  std::size_t support_size = 0;
  std::string goal_pass_mode = "none";
  double delta = 0.0;
  double entropy_p = 0.0;
  double mean_d = 0.0;
  double j_learn = 0.0;
  double j_explore = 0.0;
  double j_explore_arithmetic = 0.0;
  double density = 0.0;  // NaN when delta == 0
  double q_residual = 0.0;
  std::size_t q_iterations = 0;
  // Unmerged incompressibility of this MDP under each epsilon treatment;
  // absent when |A| < 2.
  std::optional<IcValue> ic_fixed, ic_sup, ic_sup_half, ic_boundary;
  // Merged incompressibility of the base w.r.t. this augmentation.
  std::optional<double> merged_entropy;
  std::string merged_method;
  bool merged_cap_hit = false;
  std::optional<IcValue> ic_merged_fixed, ic_merged_sup;
  std::vector<std::uint32_t> d;
  std::vector<double> q;
};

DifficultyReport difficulty_report(const TabularDsmdp& mdp, const StateDistribution& p,
                                   const DifficultyOptions& options = {});

// Same, plus merged incompressibility of `base` under the augmentation.
// Macroaction augmentations of an invertible base take H[P+] = H[p] directly.
DifficultyReport difficulty_report(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                   const StateDistribution& p, const DifficultyOptions& options = {});

}  // namespace dsmdp::metrics
