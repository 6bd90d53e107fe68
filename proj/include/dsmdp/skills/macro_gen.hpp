#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dsmdp::skills {

// Per-environment law for random macroactions, over action labels.
enum class MacroLaw { cliff_walking, pickup_world, n_puzzle, pocket_cube };
MacroLaw macro_law_for_env(const std::string& env_name);
const char* to_string(MacroLaw law);

struct MacroGenSpec {
  MacroLaw law = MacroLaw::cliff_walking;
  std::vector<unsigned> k_values{1, 2, 3, 4, 5};
  unsigned sets_per_k = 5;
  std::uint64_t seed = 0;
  std::size_t rejection_budget = 100'000;
};

struct MacroSet {
  std::string name;
  std::vector<std::string> macros;  // compact label strings, e.g. "RRD"

  friend bool operator==(const MacroSet&, const MacroSet&) = default;
};

// One macro: length 2 + (failures before the first success) of a geometric
// variable, symbols drawn per the law. Cliff-walking and pickup laws pick a
// drift component once per macro, then draw every symbol from it.
std::string sample_macro(MacroLaw law, std::mt19937_64& rng);

// Sets named "<prefix>/k<k>_<i>", ordered by k then i.
std::vector<MacroSet> generate_macro_sets(const MacroGenSpec& spec);

// Hand-picked sets: "<prefix>/lemma" plus "<prefix>/set1".."set5".
std::vector<MacroSet> curated_presets(MacroLaw law);
MacroSet find_preset(const std::string& name);
std::string preset_prefix(MacroLaw law);

}  // namespace dsmdp::skills
