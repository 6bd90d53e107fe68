#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"
#include "dsmdp/metrics/incompressibility.hpp"
#include "dsmdp/metrics/q_solver.hpp"
#include "dsmdp/skills/augment.hpp"

namespace dsmdp::metrics {

// One checked inequality. `holds` is meaningful only when preconditions_met.
struct BoundRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool preconditions_met = false;
  bool holds = false;
  std::string notes;

  bool violated() const noexcept { return preconditions_met && !holds; }
};

struct BoundsOptions {
  double delta = 0.02;
  double slack = 1e-9;
  EpsilonSpec sup{EpsilonMode::sup_grid, 0.02, 1.0, 2001};
  MergeLimits merge;
  QSolveOptions q;
  std::uint64_t separability_pair_budget = 16'000'000;
  std::size_t length_separated_max_states = 10'000;
  std::size_t length_separated_max_len = 64;
  std::uint64_t count_cell_budget = 50'000'000;
};

struct BoundsReport {
  std::size_t base_actions = 0;
  std::size_t augmented_actions = 0;
  bool base_separable = false;
  bool base_separable_known = false;
  bool macro_augmentation = false;
  std::string goal_pass_mode;
  double delta = 0.0;
  double j_learn_base = 0.0, j_learn_aug = 0.0;
  double j_explore_base = 0.0, j_explore_aug = 0.0;
  std::vector<BoundRecord> records;

  const BoundRecord* find(const std::string& name) const;
  std::size_t violations() const;
  std::size_t skipped() const;
  std::size_t held() const;
};

// Decides solution separability: invertible transitions, else the exact pair
// search when num_states^2 fits the budget; nullopt when neither applies.
std::optional<bool> solution_separable(const TabularDsmdp& mdp, std::uint64_t pair_budget = 16'000'000);

// Evaluates every claim applicable to (base, augmentation, p). Only the
// undefined_is_dead goal-pass mode matches the formal setting; under success
// mode every record is skipped.
BoundsReport bounds_report(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                           const StateDistribution& p, const BoundsOptions& options = {});

// Individual checkers, also used by bounds_report.
BoundRecord check_exploration_entropy_density(const TabularDsmdp& augmented, const StateDistribution& p,
                                              double delta, const QSolveOptions& q = {}, double slack = 1e-9);
BoundRecord check_density_at_most_one(const TabularDsmdp& mdp, double delta, bool separable,
                                      const QSolveOptions& q = {}, double slack = 1e-9);
BoundRecord check_uniform_solutions_gap(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                        const StateDistribution& p, bool base_separable,
                                        const BoundsOptions& options = {});
BoundRecord check_length_separated_gap(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                       const StateDistribution& p, bool base_separable,
                                       const BoundsOptions& options = {});
BoundRecord check_kl_condition_worse(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                     const StateDistribution& p, bool base_separable,
                                     const BoundsOptions& options = {});

// KL(p' || rho') with the dummy state carrying 1 - sum rho.
double kl_to_density(const StateDistribution& p, const QTable& q, const SolutionLengthTable& d,
                     const TabularDsmdp& mdp);

// Demonstrates that a skill augmentation can help exploration while hurting
// learning: builds the tightness augmentation with num_skills skills and
// records J_learn ratio (lhs) against J_explore ratio (rhs); holds when
// lhs > 1 > rhs.
BoundRecord explore_helps_learn_hurts(const TabularDsmdp& base, const StateDistribution& p, double delta,
                                      std::size_t num_skills, const QSolveOptions& q = {});

}  // namespace dsmdp::metrics
