#pragma once

#include <string>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/metrics/assignment.hpp"

namespace dsmdp::metrics {

enum class EpsilonMode { fixed_epsilon, sup_grid, boundary_limit };
const char* to_string(EpsilonMode m);
EpsilonMode epsilon_mode_from_string(const std::string& s);

struct EpsilonSpec {
  EpsilonMode mode = EpsilonMode::fixed_epsilon;
  double epsilon = 0.02;      // fixed_epsilon
  double eps_max = 1.0;       // sup_grid upper end; 1 means the open interval (0, 1)
  std::size_t grid_points = 2001;
};

struct IcValue {
  double value = 0.0;
  double raw = 0.0;        // before clamping
  double epsilon = 0.0;    // maximizer (NaN for the epsilon -> 1 limit)
  bool clamped = false;
  bool at_boundary = false;
  EpsilonMode mode = EpsilonMode::fixed_epsilon;
};

// (H - ln((1-eps)/eps)) / (mean_d * ln(action_factor / (1-eps))).
double ic_at_epsilon(double entropy, double mean_d, double action_factor, double epsilon);

// Evaluates the incompressibility family from summary statistics.
// action_factor is |A| (or |A| * E for the expressive variant).
IcValue ic_from_stats(double entropy, double mean_d, double action_factor, const EpsilonSpec& spec);

IcValue ic_unmerged(const TabularDsmdp& mdp, const StateDistribution& p, const EpsilonSpec& spec);
IcValue ic_unmerged(const TabularDsmdp& mdp, const StateDistribution& p, const SolutionLengthTable& d,
                    const EpsilonSpec& spec);

struct MergeLimits {
  std::size_t solutions_per_state = 64;
  std::size_t max_support = 500'000;
  AssignmentLimits assignment;
};

struct MergedIc {
  IcValue ic;
  double merged_entropy = 0.0;
  AssignmentMethod method = AssignmentMethod::matching_exact;
  bool cap_hit = false;  // some state had more shortest solutions than enumerated
};

// Uses H[P+] from shortest solutions in `augmented` with E_p[d] and |A| of
// `base`.
MergedIc ic_merged(const TabularDsmdp& base, const TabularDsmdp& augmented, const StateDistribution& p,
                   const EpsilonSpec& spec, const MergeLimits& limits = {});

// Expressive incompressibility with min over canonical solutions. For
// non-separable MDPs candidates are solutions up to d(s) + length_slack, so
// the minimum found is an upper bound on the true one.
struct ExpressiveIc {
  IcValue ic;
  double min_entropy = 0.0;
  AssignmentMethod method = AssignmentMethod::separable_exact;
  bool cap_hit = false;
};
ExpressiveIc ic_expressive(const TabularDsmdp& mdp, const StateDistribution& p, double expressivity,
                           const EpsilonSpec& spec, const MergeLimits& limits = {}, std::size_t length_slack = 2);

}  // namespace dsmdp::metrics
