#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dsmdp::experiment {

struct BoundsCampaignSpec {
  std::uint64_t seed = 0;
  std::size_t separable_bases = 200;
  std::size_t skill_augmentations = 200;
  std::size_t uniform_gap_macro_sets = 50;
  std::size_t min_states = 4;
  std::size_t max_states = 12;
  std::size_t max_actions = 3;
  double delta = 0.02;
  bool demos = true;
};

// Everything needed to reproduce one experiment directory.
struct ExperimentSpec {
  std::string name = "experiment";
  std::string env = "cliff_walking";
  bool include_base = true;
  bool include_curated = true;
  std::vector<unsigned> k_values{1, 2, 3, 4, 5};
  unsigned sets_per_k = 5;
  std::uint64_t macro_seed = 0;
  // Extra named variants: {"name": ..., "macros": [...]}.
  std::vector<std::pair<std::string, std::vector<std::string>>> extra_variants;

  std::vector<std::string> algorithms{"q_learning"};
  std::string rl_preset;  // empty: derived from env
  std::optional<std::uint64_t> max_env_steps;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::string goal_pass_mode = "success";

  std::optional<double> delta;  // default 1 / horizon
  bool merged_ic = true;
  double reward_threshold = 0.95;
  double value_error_threshold = 0.05;

  double planner_alpha = 0.1;
  double planner_stop_error = 0.01;

  BoundsCampaignSpec bounds;

  double effective_delta() const;
  std::string effective_rl_preset() const;
};

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);
ExperimentSpec load_spec(const std::string& path);
void save_spec(const std::string& path, const ExperimentSpec& spec);

// RL preset name for an environment preset name.
std::string rl_preset_for_env(const std::string& env);

}  // namespace dsmdp::experiment
