#include "dsmdp/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsmdp/core/graph.hpp"
#include "dsmdp/metrics/difficulty.hpp"

namespace dsmdp::metrics {

namespace {

DifficultyReport core_report(const TabularDsmdp& mdp, const StateDistribution& p, const DifficultyOptions& opt,
                             SolutionLengthTable& d) {
  DifficultyReport r;
  d = shortest_solution_lengths(mdp);
  require_solvable_support(p, mdp, d);
  r.num_states = mdp.num_states();
  r.num_actions = mdp.num_actions();
  r.base_action_count = mdp.base_action_count();
  r.support_size = p.support_size();
  r.delta = opt.delta;
  r.entropy_p = p.entropy();
  r.mean_d = mean_solution_length(p, d);
  r.j_learn = static_cast<double>(mdp.num_actions()) * r.mean_d;
  QTable q = solve_q(mdp, d, opt.delta, opt.q);
  r.q_residual = q.residual;
  r.q_iterations = q.iterations;
  r.j_explore = p_exploration_difficulty(p, q);
  r.j_explore_arithmetic = p_exploration_difficulty_arithmetic(p, q);
  r.density = opt.delta > 0.0 ? solution_density(mdp, q, d) : std::numeric_limits<double>::quiet_NaN();
  if (mdp.num_actions() > 1) {
    const double a = static_cast<double>(mdp.num_actions());
    r.ic_fixed = ic_from_stats(r.entropy_p, r.mean_d, a, opt.fixed);
    r.ic_sup = ic_from_stats(r.entropy_p, r.mean_d, a, opt.sup);
    r.ic_sup_half = ic_from_stats(r.entropy_p, r.mean_d, a, opt.sup_half);
    r.ic_boundary = ic_from_stats(r.entropy_p, r.mean_d, a, EpsilonSpec{EpsilonMode::boundary_limit});
  }
  if (opt.keep_arrays) {
    r.d = d.d;
    r.q = std::move(q.q);
  }
  return r;
}

}  // namespace

DifficultyReport difficulty_report(const TabularDsmdp& mdp, const StateDistribution& p,
                                   const DifficultyOptions& options) {
  SolutionLengthTable d;
  return core_report(mdp, p, options, d);
}

DifficultyReport difficulty_report(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                   const StateDistribution& p, const DifficultyOptions& options) {
  SolutionLengthTable d;
  DifficultyReport r = core_report(augmented.table, p, options, d);
  r.goal_pass_mode = skills::to_string(augmented.mode);
  if (!options.merged || base.num_actions() < 2) return r;

  const bool macros = std::all_of(augmented.skills.begin(), augmented.skills.end(),
                                  [](const skills::Skill& z) { return z.is_macro(); });
  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  const double mean_d0 = mean_solution_length(p, d0);
  const double a0 = static_cast<double>(base.num_actions());
  if (macros && augmented.mode == skills::GoalPassMode::undefined_is_dead && check_invertible_transitions(base, d0)) {
    r.merged_entropy = p.entropy();
    r.merged_method = "separable_exact";
  } else if (p.support_size() <= options.merge.max_support) {
    const MergedIc m = ic_merged(base, augmented.table, p, options.fixed, options.merge);
    r.merged_entropy = m.merged_entropy;
    r.merged_method = to_string(m.method);
    r.merged_cap_hit = m.cap_hit;
  } else {
    r.merged_method = "skipped_support_too_large";
    return r;
  }
  r.ic_merged_fixed = ic_from_stats(*r.merged_entropy, mean_d0, a0, options.fixed);
  r.ic_merged_sup = ic_from_stats(*r.merged_entropy, mean_d0, a0, options.sup);
  return r;
}

}  // namespace dsmdp::metrics
