#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp {

// Binary layout (little-endian u32 unless noted):
//   magic "DSMDPTAB" (8 bytes), version,
//   num_states, num_actions, goal, base_action_count,
//   successor table row-major (DEAD = 0xFFFFFFFF),
//   label count, then per label: byte length + bytes.
void write_binary(std::ostream& os, const TabularDsmdp& mdp);
TabularDsmdp read_binary(std::istream& is);
void save_binary(const std::string& path, const TabularDsmdp& mdp);
TabularDsmdp load_binary(const std::string& path);

nlohmann::json to_json(const TabularDsmdp& mdp);
TabularDsmdp mdp_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StateDistribution& p);
StateDistribution distribution_from_json(const nlohmann::json& j);

}  // namespace dsmdp
