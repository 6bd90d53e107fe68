#include "dsmdp/experiment/variants.hpp"

#include <sstream>

#include "dsmdp/skills/macro_gen.hpp"

namespace dsmdp::experiment {

const char* to_string(VariantKind k) {
  switch (k) {
    case VariantKind::base: return "base";
    case VariantKind::curated: return "curated";
    case VariantKind::generated: return "generated";
    case VariantKind::extra: return "extra";
  }
  return "?";
}

std::vector<Variant> build_variants(const ExperimentSpec& spec) {
  std::vector<Variant> out;
  if (spec.include_base) out.push_back({"base", VariantKind::base, {}});
  const bool needs_law = spec.include_curated || (!spec.k_values.empty() && spec.sets_per_k > 0);
  if (needs_law) {
    const skills::MacroLaw law = skills::macro_law_for_env(spec.env);
    if (spec.include_curated)
      for (auto& set : skills::curated_presets(law)) out.push_back({set.name, VariantKind::curated, set.macros});
    skills::MacroGenSpec gen;
    gen.law = law;
    gen.k_values = spec.k_values;
    gen.sets_per_k = spec.sets_per_k;
    gen.seed = spec.macro_seed;
    if (!gen.k_values.empty() && gen.sets_per_k > 0)
      for (auto& set : skills::generate_macro_sets(gen)) out.push_back({set.name, VariantKind::generated, set.macros});
  }
  for (const auto& [name, macros] : spec.extra_variants) out.push_back({name, VariantKind::extra, macros});
  return out;
}

skills::AugmentedMdp augment_variant(const TabularDsmdp& base, const Variant& v, skills::GoalPassMode mode) {
  return skills::augment_with_macros(base, v.macros, mode);
}

std::string join_macros(const std::vector<std::string>& macros) {
  std::string out;
  for (std::size_t i = 0; i < macros.size(); ++i) {
    if (i > 0) out += ';';
    out += macros[i];
  }
  return out;
}

std::vector<std::string> split_macros(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  for (std::string m; std::getline(ss, m, ';');) out.push_back(m);
  return out;
}

}  // namespace dsmdp::experiment
