#pragma once

#include <cstddef>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/skills/augment.hpp"

namespace dsmdp::metrics {

struct TightnessAugmentation {
  skills::AugmentedMdp augmented;
  std::vector<std::size_t> goal_skills;  // per support state of p, floor(K f(s))
  bool empty_self_maps = false;          // some self-map has no round trip in the base
};

// f(s) = delta p(s) / (delta - (1 - delta) p(s)).
double tightness_fraction(double p, double delta);

// K tabular skills: floor(K f(s)) of them send support state s to the goal
// along a shortest base solution, the rest map s back to s. Throws
// delta_too_small unless delta > max p.
TightnessAugmentation tightness_augmentation(const TabularDsmdp& base, const StateDistribution& p, double delta,
                                             std::size_t num_skills);

}  // namespace dsmdp::metrics
