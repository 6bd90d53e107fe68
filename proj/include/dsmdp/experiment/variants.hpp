#pragma once

#include <string>
#include <vector>

#include "dsmdp/env/environment.hpp"
#include "dsmdp/experiment/spec.hpp"
#include "dsmdp/skills/augment.hpp"

namespace dsmdp::experiment {

enum class VariantKind { base, curated, generated, extra };
const char* to_string(VariantKind k);

struct Variant {
  std::string name;
  VariantKind kind = VariantKind::base;
  std::vector<std::string> macros;
};

// Base first, then curated presets, generated sets (ordered by k), extras.
std::vector<Variant> build_variants(const ExperimentSpec& spec);

skills::AugmentedMdp augment_variant(const TabularDsmdp& base, const Variant& v, skills::GoalPassMode mode);

std::string join_macros(const std::vector<std::string>& macros);  // ';'-separated
std::vector<std::string> split_macros(const std::string& s);

}  // namespace dsmdp::experiment
