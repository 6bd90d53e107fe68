#include "dsmdp/experiment/spec.hpp"

#include <fstream>
#include <set>

#include "dsmdp/core/error.hpp"
#include "dsmdp/rl/agents.hpp"

namespace dsmdp::experiment {

using nlohmann::json;

std::string rl_preset_for_env(const std::string& env) {
  if (env.rfind("cliff", 0) == 0) return "cliff_walking";
  if (env.rfind("chain", 0) == 0) return "chain";
  if (env.rfind("8puzzle", 0) == 0) return "8puzzle";
  if (env.rfind("pocket_cube", 0) == 0) return "pocket_cube";
  if (env.rfind("pickup", 0) == 0) return "pickup";
  return "default";
}

double ExperimentSpec::effective_delta() const {
  if (delta) return *delta;
  return 1.0 / static_cast<double>(rl::rl_preset(effective_rl_preset()).horizon);
}

std::string ExperimentSpec::effective_rl_preset() const {
  return rl_preset.empty() ? rl_preset_for_env(env) : rl_preset;
}

namespace {

json bounds_to_json(const BoundsCampaignSpec& b) {
  return {{"seed", b.seed},
          {"separable_bases", b.separable_bases},
          {"skill_augmentations", b.skill_augmentations},
          {"uniform_gap_macro_sets", b.uniform_gap_macro_sets},
          {"min_states", b.min_states},
          {"max_states", b.max_states},
          {"max_actions", b.max_actions},
          {"delta", b.delta},
          {"demos", b.demos}};
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::config_invalid, where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) fail(ErrorCode::config_invalid, "unknown key '" + k + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::config_invalid, std::string("bad value for '") + key + "': " + e.what());
  }
}

BoundsCampaignSpec bounds_from_json(const json& j) {
  reject_unknown(j,
                 {"seed", "separable_bases", "skill_augmentations", "uniform_gap_macro_sets", "min_states",
                  "max_states", "max_actions", "delta", "demos"},
                 "bounds");
  BoundsCampaignSpec b;
  read(j, "seed", b.seed);
  read(j, "separable_bases", b.separable_bases);
  read(j, "skill_augmentations", b.skill_augmentations);
  read(j, "uniform_gap_macro_sets", b.uniform_gap_macro_sets);
  read(j, "min_states", b.min_states);
  read(j, "max_states", b.max_states);
  read(j, "max_actions", b.max_actions);
  read(j, "delta", b.delta);
  read(j, "demos", b.demos);
  if (b.min_states < 2 || b.max_states < b.min_states || b.max_actions < 1)
    fail(ErrorCode::config_invalid, "bounds state/action ranges are invalid");
  return b;
}

}  // namespace

json to_json(const ExperimentSpec& s) {
  json extras = json::array();
  for (const auto& [name, macros] : s.extra_variants) extras.push_back({{"name", name}, {"macros", macros}});
  json j = {{"name", s.name},
            {"env", s.env},
            {"include_base", s.include_base},
            {"include_curated", s.include_curated},
            {"k_values", s.k_values},
            {"sets_per_k", s.sets_per_k},
            {"macro_seed", s.macro_seed},
            {"extra_variants", extras},
            {"algorithms", s.algorithms},
            {"rl_preset", s.effective_rl_preset()},
            {"seeds", s.seeds},
            {"goal_pass_mode", s.goal_pass_mode},
            {"delta", s.effective_delta()},
            {"merged_ic", s.merged_ic},
            {"reward_threshold", s.reward_threshold},
            {"value_error_threshold", s.value_error_threshold},
            {"planner_alpha", s.planner_alpha},
            {"planner_stop_error", s.planner_stop_error},
            {"bounds", bounds_to_json(s.bounds)}};
  j["max_env_steps"] = s.max_env_steps ? json(*s.max_env_steps) : json(nullptr);
  return j;
}

ExperimentSpec spec_from_json(const json& j) {
  reject_unknown(j,
                 {"name", "env", "include_base", "include_curated", "k_values", "sets_per_k", "macro_seed",
                  "extra_variants", "algorithms", "rl_preset", "max_env_steps", "seeds", "goal_pass_mode", "delta",
                  "merged_ic", "reward_threshold", "value_error_threshold", "planner_alpha", "planner_stop_error",
                  "bounds"},
                 "experiment spec");
  ExperimentSpec s;
  read(j, "name", s.name);
  read(j, "env", s.env);
  read(j, "include_base", s.include_base);
  read(j, "include_curated", s.include_curated);
  read(j, "k_values", s.k_values);
  read(j, "sets_per_k", s.sets_per_k);
  read(j, "macro_seed", s.macro_seed);
  if (j.contains("extra_variants")) {
    for (const auto& e : j.at("extra_variants")) {
      reject_unknown(e, {"name", "macros"}, "extra_variants entry");
      s.extra_variants.emplace_back(e.at("name").get<std::string>(), e.at("macros").get<std::vector<std::string>>());
    }
  }
  read(j, "algorithms", s.algorithms);
  read(j, "rl_preset", s.rl_preset);
  if (j.contains("max_env_steps") && !j.at("max_env_steps").is_null())
    s.max_env_steps = j.at("max_env_steps").get<std::uint64_t>();
  read(j, "seeds", s.seeds);
  read(j, "goal_pass_mode", s.goal_pass_mode);
  if (j.contains("delta") && !j.at("delta").is_null()) s.delta = j.at("delta").get<double>();
  read(j, "merged_ic", s.merged_ic);
  read(j, "reward_threshold", s.reward_threshold);
  read(j, "value_error_threshold", s.value_error_threshold);
  read(j, "planner_alpha", s.planner_alpha);
  read(j, "planner_stop_error", s.planner_stop_error);
  if (j.contains("bounds")) s.bounds = bounds_from_json(j.at("bounds"));
  if (s.seeds.empty()) fail(ErrorCode::config_invalid, "seeds must not be empty");
  if (s.delta && !(*s.delta >= 0.0 && *s.delta < 1.0)) fail(ErrorCode::config_invalid, "delta must be in [0, 1)");
  rl::rl_preset(s.effective_rl_preset());
  return s;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open spec file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::config_invalid, std::string("spec file is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

void save_spec(const std::string& path, const ExperimentSpec& spec) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path);
  out << to_json(spec).dump(2) << '\n';
}

}  // namespace dsmdp::experiment
