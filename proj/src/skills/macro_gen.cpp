#include "dsmdp/skills/macro_gen.hpp"

#include <algorithm>
#include <array>

#include "dsmdp/core/error.hpp"

namespace dsmdp::skills {

namespace {

struct Component {
  double weight;
  std::string symbols;
  std::vector<double> probs;
};

std::vector<Component> components(MacroLaw law) {
  switch (law) {
    case MacroLaw::cliff_walking:
      return {{0.4, "UR", {0.3, 0.7}}, {0.3, "RD", {0.7, 0.3}}, {0.1, "DL", {0.7, 0.3}}, {0.2, "LU", {0.3, 0.7}}};
    case MacroLaw::pickup_world:
      return {{0.25, "LUP", {0.4, 0.4, 0.2}},
              {0.25, "URP", {0.4, 0.4, 0.2}},
              {0.25, "RDP", {0.4, 0.4, 0.2}},
              {0.25, "DLP", {0.4, 0.4, 0.2}}};
    case MacroLaw::n_puzzle: return {{1.0, "URDL", {0.2, 0.3, 0.3, 0.2}}};
    case MacroLaw::pocket_cube: return {{1.0, "FRU", {1.0, 1.0, 1.0}}};
  }
  return {};
}

double geometric_success(MacroLaw law) {
  return law == MacroLaw::cliff_walking || law == MacroLaw::pickup_world ? 1.0 / 3.0 : 0.5;
}

}  // namespace

MacroLaw macro_law_for_env(const std::string& env_name) {
  if (env_name.rfind("cliff", 0) == 0) return MacroLaw::cliff_walking;
  if (env_name.rfind("pickup", 0) == 0) return MacroLaw::pickup_world;
  if (env_name.find("puzzle") != std::string::npos) return MacroLaw::n_puzzle;
  if (env_name.rfind("pocket_cube", 0) == 0 || env_name.rfind("cube", 0) == 0) return MacroLaw::pocket_cube;
  fail(ErrorCode::config_invalid, "no macroaction law for environment '" + env_name + "'");
}

const char* to_string(MacroLaw law) {
  switch (law) {
    case MacroLaw::cliff_walking: return "cliff_walking";
    case MacroLaw::pickup_world: return "pickup_world";
    case MacroLaw::n_puzzle: return "n_puzzle";
    case MacroLaw::pocket_cube: return "pocket_cube";
  }
  return "unknown";
}

std::string preset_prefix(MacroLaw law) {
  switch (law) {
    case MacroLaw::cliff_walking: return "cliff";
    case MacroLaw::pickup_world: return "pickup";
    case MacroLaw::n_puzzle: return "8puzzle";
    case MacroLaw::pocket_cube: return "cube";
  }
  return "unknown";
}

std::string sample_macro(MacroLaw law, std::mt19937_64& rng) {
  const auto comps = components(law);
  std::vector<double> weights;
  for (const auto& c : comps) weights.push_back(c.weight);
  std::discrete_distribution<std::size_t> pick_component(weights.begin(), weights.end());
  std::geometric_distribution<unsigned> extra(geometric_success(law));
  const Component& comp = comps[pick_component(rng)];
  std::discrete_distribution<std::size_t> pick_symbol(comp.probs.begin(), comp.probs.end());
  const unsigned length = 2 + extra(rng);
  std::string macro;
  for (unsigned i = 0; i < length; ++i) macro += comp.symbols[pick_symbol(rng)];
  return macro;
}

std::vector<MacroSet> generate_macro_sets(const MacroGenSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<MacroSet> out;
  const std::string prefix = preset_prefix(spec.law);
  for (unsigned k : spec.k_values) {
    for (unsigned i = 0; i < spec.sets_per_k; ++i) {
      MacroSet set;
      set.name = prefix + "/k" + std::to_string(k) + "_" + std::to_string(i + 1);
      std::size_t attempts = 0;
      while (set.macros.size() < k) {
        if (++attempts > spec.rejection_budget)
          fail(ErrorCode::rejection_budget_exceeded, "cannot draw " + std::to_string(k) + " distinct macroactions");
        std::string m = sample_macro(spec.law, rng);
        if (std::find(set.macros.begin(), set.macros.end(), m) == set.macros.end()) set.macros.push_back(std::move(m));
      }
      out.push_back(std::move(set));
    }
  }
  return out;
}

std::vector<MacroSet> curated_presets(MacroLaw law) {
  const std::string p = preset_prefix(law);
  auto named = [&](std::vector<std::vector<std::string>> sets) {
    std::vector<MacroSet> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
      out.push_back({p + (i == 0 ? std::string("/lemma") : "/set" + std::to_string(i)), std::move(sets[i])});
    return out;
  };
  switch (law) {
    case MacroLaw::cliff_walking:
      return named({{"URRRRRRRRRRRD"},
                    {"RR"},
                    {"RR", "RRRR", "RRRRRRRR"},
                    {"RRRRRRRRRRR"},
                    {"UUURRRR", "RRR", "DRDRD"},
                    {"URRRRRRRRRRR", "RRRRRRRRRRRD"}});
    case MacroLaw::pickup_world:
      return named({{"PUURRRP", "LL", "UU", "DD"},
                    {"LL", "UU", "DD"},
                    {"LL", "UU", "RRR", "DD"},
                    {"PUU", "RRRP"},
                    {"PUURRRP"},
                    {"PUURRRP", "LL", "UU", "RRR", "DD"}});
    case MacroLaw::n_puzzle:
      return named({{"RD", "LDR"}, {"RD"}, {"LDR"}, {"RD", "DR"}, {"LDR", "URD"}, {"RD", "DR", "LDR", "URD"}});
    case MacroLaw::pocket_cube:
      return named({{"FF", "RR", "UU"},
                    {"FF"},
                    {"FF", "FFF"},
                    {"FF", "RR"},
                    {"FF", "FFF", "RR", "RRR"},
                    {"FF", "FFF", "RR", "RRR", "UUU"}});
  }
  return {};
}

MacroSet find_preset(const std::string& name) {
  for (MacroLaw law : {MacroLaw::cliff_walking, MacroLaw::pickup_world, MacroLaw::n_puzzle, MacroLaw::pocket_cube})
    for (const MacroSet& s : curated_presets(law))
      if (s.name == name) return s;
  fail(ErrorCode::config_invalid, "unknown macroaction preset '" + name + "'");
}

}  // namespace dsmdp::skills
