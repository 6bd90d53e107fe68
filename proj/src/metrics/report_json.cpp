#include "dsmdp/metrics/report_json.hpp"

#include <cmath>

namespace dsmdp::metrics {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json spec_json(const EpsilonSpec& s) {
  return {{"mode", to_string(s.mode)}, {"epsilon", s.epsilon}, {"eps_max", s.eps_max}, {"grid_points", s.grid_points}};
}

void put_ic(json& j, const char* key, const std::optional<IcValue>& ic) {
  j[key] = ic ? to_json(*ic) : json(nullptr);
}

}  // namespace

json to_json(const IcValue& ic) {
  return {{"value", number(ic.value)},       {"raw", number(ic.raw)},
          {"epsilon", number(ic.epsilon)},   {"clamped", ic.clamped},
          {"at_boundary", ic.at_boundary},   {"mode", to_string(ic.mode)}};
}

json to_json(const DifficultyReport& r, const DifficultyOptions& o) {
  json j;
  j["num_states"] = r.num_states;
  j["num_actions"] = r.num_actions;
  j["base_action_count"] = r.base_action_count;
  j["support_size"] = r.support_size;
  j["goal_pass_mode"] = r.goal_pass_mode;
  j["log_base"] = "e";
  j["delta"] = r.delta;
  j["entropy_p"] = r.entropy_p;
  j["entropy_p_bits"] = r.entropy_p / std::log(2.0);
  j["mean_d"] = r.mean_d;
  j["j_learn"] = r.j_learn;
  j["j_explore"] = number(r.j_explore);
  j["j_explore_arithmetic"] = number(r.j_explore_arithmetic);
  j["density"] = number(r.density);
  j["q_residual"] = r.q_residual;
  j["q_iterations"] = r.q_iterations;
  put_ic(j, "ic_fixed", r.ic_fixed);
  put_ic(j, "ic_sup", r.ic_sup);
  put_ic(j, "ic_sup_half", r.ic_sup_half);
  put_ic(j, "ic_boundary", r.ic_boundary);
  j["merged_entropy"] = r.merged_entropy ? json(*r.merged_entropy) : json(nullptr);
  j["merged_method"] = r.merged_method;
  j["merged_cap_hit"] = r.merged_cap_hit;
  put_ic(j, "ic_merged_fixed", r.ic_merged_fixed);
  put_ic(j, "ic_merged_sup", r.ic_merged_sup);
  j["parameters"] = {{"fixed", spec_json(o.fixed)},
                     {"sup", spec_json(o.sup)},
                     {"sup_half", spec_json(o.sup_half)},
                     {"q_tol", o.q.tol},
                     {"q_max_iter", o.q.max_iter},
                     {"solutions_per_state", o.merge.solutions_per_state},
                     {"exhaustive_max_left", o.merge.assignment.exhaustive_max_left}};
  if (!r.d.empty()) j["d"] = r.d;
  if (!r.q.empty()) j["q"] = r.q;
  return j;
}

json to_json(const BoundRecord& r) {
  return {{"name", r.name},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"preconditions_met", r.preconditions_met},
          {"holds", r.preconditions_met ? json(r.holds) : json(nullptr)},
          {"notes", r.notes}};
}

json to_json(const BoundsReport& r, const BoundsOptions& o) {
  json records = json::array();
  for (const BoundRecord& rec : r.records) records.push_back(to_json(rec));
  return {{"base_actions", r.base_actions},
          {"augmented_actions", r.augmented_actions},
          {"base_separable", r.base_separable_known ? json(r.base_separable) : json(nullptr)},
          {"macro_augmentation", r.macro_augmentation},
          {"goal_pass_mode", r.goal_pass_mode},
          {"delta", r.delta},
          {"j_learn_base", r.j_learn_base},
          {"j_learn_aug", r.j_learn_aug},
          {"j_explore_base", number(r.j_explore_base)},
          {"j_explore_aug", number(r.j_explore_aug)},
          {"records", records},
          {"parameters", {{"slack", o.slack}, {"sup", spec_json(o.sup)}, {"q_tol", o.q.tol}}}};
}

}  // namespace dsmdp::metrics
