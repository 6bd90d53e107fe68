#include "dsmdp/metrics/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/separability.hpp"
#include "dsmdp/metrics/difficulty.hpp"
#include "dsmdp/metrics/solution_counts.hpp"
#include "dsmdp/metrics/tightness.hpp"

namespace dsmdp::metrics {

const BoundRecord* BoundsReport::find(const std::string& name) const {
  for (const BoundRecord& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

std::size_t BoundsReport::violations() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.violated(); }));
}

std::size_t BoundsReport::skipped() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.preconditions_met; }));
}

std::size_t BoundsReport::held() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.preconditions_met && r.holds; }));
}

std::optional<bool> solution_separable(const TabularDsmdp& mdp, std::uint64_t pair_budget) {
  if (check_invertible_transitions(mdp)) return true;
  const auto n = static_cast<std::uint64_t>(mdp.num_states());
  if (n * n > pair_budget) return std::nullopt;
  return check_solution_separable_exact(mdp, pair_budget).separable;
}

namespace {

BoundRecord skipped(std::string name, std::string why) {
  BoundRecord r;
  r.name = std::move(name);
  r.notes = std::move(why);
  return r;
}

BoundRecord evaluated(std::string name, double lhs, double rhs, double slack, std::string notes = {}) {
  BoundRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.preconditions_met = true;
  r.holds = lhs >= rhs - slack;
  r.notes = std::move(notes);
  return r;
}

double learning_factor(std::size_t a0, std::size_t a_plus) {
  if (a_plus == a0) return 1.0;
  return static_cast<double>(a_plus) * std::log(static_cast<double>(a0)) /
         (static_cast<double>(a0) * std::log(static_cast<double>(a_plus)));
}

bool all_macros(const skills::AugmentedMdp& aug) {
  return std::all_of(aug.skills.begin(), aug.skills.end(), [](const skills::Skill& z) { return z.is_macro(); });
}

std::optional<QTable> try_solve_q(const TabularDsmdp& mdp, const SolutionLengthTable& d, double delta,
                                  const QSolveOptions& q, std::string* why) {
  try {
    return solve_q(mdp, d, delta, q);
  } catch (const NotConverged& e) {
    *why = e.what();
    return std::nullopt;
  }
}

std::string fmt(const char* label, double v) {
  std::ostringstream os;
  os.precision(12);
  os << label << '=' << v;
  return os.str();
}

}  // namespace

double kl_to_density(const StateDistribution& p, const QTable& q, const SolutionLengthTable& d,
                     const TabularDsmdp& mdp) {
  require_solvable_support(p, mdp, d);
  double kl = 0.0;
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    const double rho = solution_density_weight(q, p.states()[i]);
    if (!(rho > 0.0)) fail(ErrorCode::q_underflow, "density weight vanishes on the support");
    kl += p.probs()[i] * std::log(p.probs()[i] / rho);
  }
  return kl;
}

BoundRecord check_exploration_entropy_density(const TabularDsmdp& augmented, const StateDistribution& p,
                                              double delta, const QSolveOptions& qopt, double slack) {
  const std::string name = "exploration_entropy_density_bound";
  if (!(delta > 0.0 && delta < 1.0)) return skipped(name, "needs 0 < delta < 1");
  const SolutionLengthTable d = shortest_solution_lengths(augmented);
  const QTable q = solve_q(augmented, d, delta, qopt);
  const double j = p_exploration_difficulty(p, q);
  const double density = solution_density(augmented, q, d);
  const double rhs = p.entropy() - std::log((1.0 - delta) / delta * density);
  return evaluated(name, j, rhs, slack, fmt("density", density));
}

BoundRecord check_density_at_most_one(const TabularDsmdp& mdp, double delta, bool separable,
                                      const QSolveOptions& qopt, double slack) {
  const std::string name = "density_at_most_one";
  if (!separable) return skipped(name, "MDP not known to be solution-separable");
  if (!(delta > 0.0 && delta < 1.0)) return skipped(name, "needs 0 < delta < 1");
  const SolutionLengthTable d = shortest_solution_lengths(mdp);
  const QTable q = solve_q(mdp, d, delta, qopt);
  // Reported as 1 >= D so that the generic lhs >= rhs - slack test applies.
  return evaluated(name, 1.0, solution_density(mdp, q, d), slack);
}

BoundRecord check_kl_condition_worse(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                     const StateDistribution& p, bool base_separable, const BoundsOptions& opt) {
  const std::string name = "exploration_kl_condition_worse";
  if (!base_separable) return skipped(name, "base not solution-separable");
  if (!all_macros(augmented) || augmented.table.num_actions() == base.num_actions())
    return skipped(name, "needs a strict macroaction augmentation");
  if (!(opt.delta > 0.0 && opt.delta < 1.0)) return skipped(name, "needs 0 < delta < 1");
  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  for (StateId s = 0; s < base.num_states(); ++s) {
    if (base.is_goal(s) || !d0.solvable(s) || d0.d[s] != 1) continue;
    for (StateId t : base.row(s))
      if (t != kDead && !base.is_goal(t) && d0.solvable(t))
        return skipped(name, "a state with a length-1 solution also has a longer one");
  }
  const QTable q0 = solve_q(base, d0, opt.delta, opt.q);
  const double kl = kl_to_density(p, q0, d0, base);
  const double a0 = static_cast<double>(base.num_actions());
  const double threshold = opt.delta * opt.delta / (8.0 * (a0 + 1.0) * (a0 + 1.0));
  const std::string kl_note = fmt("kl", kl) + " " + fmt("threshold", threshold);
  if (kl > threshold) return skipped(name, "KL condition fails: " + kl_note);
  const SolutionLengthTable dp = shortest_solution_lengths(augmented.table);
  const QTable qp = solve_q(augmented.table, dp, opt.delta, opt.q);
  const double gap = p_exploration_difficulty(p, qp) - p_exploration_difficulty(p, q0);
  BoundRecord r = evaluated(name, gap, 0.0, 0.0, kl_note);
  r.holds = gap > 0.0;
  return r;
}

BoundRecord check_uniform_solutions_gap(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                        const StateDistribution& p, bool base_separable, const BoundsOptions& opt) {
  const std::string name = "exploration_uniform_solutions_gap";
  if (!base_separable) return skipped(name, "base not solution-separable");
  if (!all_macros(augmented) || augmented.table.num_actions() == base.num_actions())
    return skipped(name, "needs a strict macroaction augmentation");
  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  const std::size_t l_max = d0.max_finite();
  const std::size_t l_check = std::min<std::size_t>(2 * l_max + 2, opt.length_separated_max_len);
  if (l_max == 0 || l_check <= l_max) return skipped(name, "solution lengths exceed the checkable range");
  if (static_cast<double>(l_check + 1) * static_cast<double>(base.num_states()) >
      static_cast<double>(opt.count_cell_budget))
    return skipped(name, "per-length count table too large");
  const PerLengthCounts counts = per_length_counts(base, l_check, opt.count_cell_budget);
  const double a0 = static_cast<double>(base.num_actions());

  // Every sequence up to the longest shortest solution solves some state.
  for (std::size_t l = 1; l <= l_max; ++l) {
    double total = 0.0;
    for (StateId s = 0; s < base.num_states(); ++s) total += counts.at_f(s, l);
    if (std::abs(total - std::pow(a0, static_cast<double>(l))) > 0.5)
      return skipped(name, "some sequence of length " + std::to_string(l) + " solves no state");
  }
  // Each solvable state has solutions of a single length only.
  for (StateId s = 0; s < base.num_states(); ++s) {
    if (base.is_goal(s) || !d0.solvable(s)) continue;
    for (std::size_t l = 1; l <= l_check; ++l)
      if (l != d0.d[s] && counts.at_f(s, l) > 0.0) return skipped(name, "a state has solutions of two lengths");
  }
  // p proportional to solution counts within each length class.
  std::vector<double> ratio(l_max + 1, -1.0);
  for (StateId s = 0; s < base.num_states(); ++s) {
    if (base.is_goal(s) || !d0.solvable(s)) continue;
    const std::size_t l = d0.d[s];
    const double r = p.prob(s) / counts.at_f(s, l);
    if (ratio[l] < 0.0) {
      ratio[l] = r;
    } else if (std::abs(r - ratio[l]) > 1e-9 * std::max(r, ratio[l])) {
      return skipped(name, "p is not proportional to solution counts within a length class");
    }
  }
  std::string why;
  const auto q0 = try_solve_q(base, d0, 0.0, opt.q, &why);
  if (!q0) return skipped(name, "q at delta 0 did not converge: " + why);
  const SolutionLengthTable dp = shortest_solution_lengths(augmented.table);
  const auto qp = try_solve_q(augmented.table, dp, 0.0, opt.q, &why);
  if (!qp) return skipped(name, "q at delta 0 did not converge: " + why);
  const double gap = p_exploration_difficulty(p, *qp) - p_exploration_difficulty(p, *q0);
  const double r = a0 / static_cast<double>(augmented.table.num_actions());
  return evaluated(name, gap, r * (1.0 - r), opt.slack,
                   "sequence coverage checked up to length " + std::to_string(l_max));
}

BoundRecord check_length_separated_gap(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                                       const StateDistribution& p, bool base_separable, const BoundsOptions& opt) {
  const std::string name = "exploration_length_separated_gap";
  if (!base_separable) return skipped(name, "base not solution-separable");
  if (!all_macros(augmented)) return skipped(name, "needs a macroaction augmentation");
  if (base.num_states() > opt.length_separated_max_states) return skipped(name, "too many states");
  const std::size_t L = opt.length_separated_max_len;
  const std::size_t n = base.num_states();
  const TabularDsmdp& aug = augmented.table;
  const std::size_t na = aug.num_actions();

  std::string why;
  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  const SolutionLengthTable dp = shortest_solution_lengths(aug);
  require_solvable_support(p, base, d0);
  const auto q0 = try_solve_q(base, d0, 0.0, opt.q, &why);
  if (!q0) return skipped(name, "q at delta 0 did not converge: " + why);
  const auto qp = try_solve_q(aug, dp, 0.0, opt.q, &why);
  if (!qp) return skipped(name, "q at delta 0 did not converge: " + why);

  std::vector<std::size_t> len(na, 1);
  for (std::size_t k = 0; k < augmented.skills.size(); ++k)
    len[augmented.base_actions() + k] = augmented.skills[k].macro_sequence().size();

  // qt[l * n + s]: weight of augmented solutions of s expanding to l base actions.
  std::vector<double> qt((L + 1) * n, 0.0);
  qt[base.goal()] = 1.0;
  const double inv = 1.0 / static_cast<double>(na);
  for (std::size_t l = 1; l <= L; ++l) {
    for (StateId s = 0; s < n; ++s) {
      if (aug.is_goal(s)) continue;
      double acc = 0.0;
      for (ActionId a = 0; a < na; ++a) {
        const StateId t = aug.successor(s, a);
        if (t == kDead || len[a] > l) continue;
        acc += qt[(l - len[a]) * n + t];
      }
      qt[l * n + s] = acc * inv;
    }
  }
  const PerLengthCounts counts = per_length_counts(base, L, opt.count_cell_budget);

  std::vector<double> q_sum(p.support_size(), 0.0);
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    const StateId s = p.states()[i];
    for (std::size_t l = 1; l <= L; ++l) q_sum[i] += qt[l * n + s];
    if (std::abs(q_sum[i] - qp->q[s]) > 1e-9 * qp->q[s])
      return skipped(name, "solutions longer than the length cap carry visible mass");
  }
  std::vector<double> lambda(L + 1, 0.0);
  for (std::size_t i = 0; i < p.support_size(); ++i)
    for (std::size_t l = 1; l <= L; ++l) lambda[l] += p.probs()[i] * qt[l * n + p.states()[i]] / q_sum[i];
  double kl = 0.0;
  const double a0 = static_cast<double>(base.num_actions());
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    const StateId s = p.states()[i];
    for (std::size_t l = 1; l <= L; ++l) {
      const double pt = p.probs()[i] * qt[l * n + s] / q_sum[i];
      if (pt <= 0.0) continue;
      const double q0t = counts.at_f(s, l) * std::pow(a0, -static_cast<double>(l));
      if (!(q0t > 0.0)) fail(ErrorCode::invalid_argument, "augmented solution without a base solution of that length");
      kl += pt * std::log(pt / (lambda[l] * q0t));
    }
  }
  const double gap = p_exploration_difficulty(p, *qp) - p_exploration_difficulty(p, *q0);
  const double r = a0 / static_cast<double>(na);
  return evaluated(name, gap, r * (1.0 - r) - kl, opt.slack, fmt("kl", kl));
}

BoundsReport bounds_report(const TabularDsmdp& base, const skills::AugmentedMdp& augmented,
                           const StateDistribution& p, const BoundsOptions& opt) {
  const TabularDsmdp& aug = augmented.table;
  BoundsReport rep;
  rep.base_actions = base.num_actions();
  rep.augmented_actions = aug.num_actions();
  rep.goal_pass_mode = skills::to_string(augmented.mode);
  rep.delta = opt.delta;
  rep.macro_augmentation = all_macros(augmented);

  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  const SolutionLengthTable dp = shortest_solution_lengths(aug);
  require_solvable_support(p, base, d0);
  rep.j_learn_base = p_learning_difficulty(base, p, d0);
  rep.j_learn_aug = p_learning_difficulty(aug, p, dp);
  const QTable q0 = solve_q(base, d0, opt.delta, opt.q);
  const QTable qp = solve_q(aug, dp, opt.delta, opt.q);
  rep.j_explore_base = p_exploration_difficulty(p, q0);
  rep.j_explore_aug = p_exploration_difficulty(p, qp);

  const std::optional<bool> sep = solution_separable(base, opt.separability_pair_budget);
  rep.base_separable_known = sep.has_value();
  rep.base_separable = sep.value_or(false);

  static const char* kNames[] = {"learning_ratio_merged_bound",       "learning_ratio_unmerged_bound",
                                 "macro_learning_always_worse",       "exploration_entropy_density_bound",
                                 "exploration_ratio_bound",           "exploration_kl_condition_worse",
                                 "exploration_uniform_solutions_gap", "learning_ratio_expressive_bound",
                                 "exploration_length_separated_gap",  "density_at_most_one"};
  if (augmented.mode != skills::GoalPassMode::undefined_is_dead) {
    for (const char* n : kNames) rep.records.push_back(skipped(n, "claims are stated for undefined_is_dead"));
    return rep;
  }

  const std::size_t a0 = base.num_actions();
  const std::size_t ap = aug.num_actions();
  const double learn_ratio = rep.j_learn_aug / rep.j_learn_base;
  const double factor = learning_factor(a0, ap);
  const bool separable_macro = rep.base_separable && rep.macro_augmentation;
  const bool strict_macro = separable_macro && ap > a0;

  // Merged bound: any skills. A greedy or capped H[P+] only lowers the rhs.
  if (a0 < 2) {
    rep.records.push_back(skipped(kNames[0], "needs |A0| > 1"));
  } else {
    double h_merged = 0.0;
    std::string method;
    if (separable_macro) {
      h_merged = p.entropy();
      method = "separable_exact";
    } else if (p.support_size() <= opt.merge.max_support) {
      const MergedIc m = ic_merged(base, aug, p, opt.sup, opt.merge);
      h_merged = m.merged_entropy;
      method = std::string(to_string(m.method)) + (m.cap_hit ? " cap_hit" : "");
    }
    if (method.empty()) {
      rep.records.push_back(skipped(kNames[0], "support too large for the merged entropy"));
    } else {
      const IcValue ic = ic_from_stats(h_merged, mean_solution_length(p, d0), static_cast<double>(a0), opt.sup);
      rep.records.push_back(evaluated(kNames[0], learn_ratio, factor * ic.raw, opt.slack, "method=" + method));
    }
  }

  const IcValue ic_sup = a0 > 1 ? ic_unmerged(base, p, d0, opt.sup) : IcValue{};
  if (!separable_macro || a0 < 2) {
    rep.records.push_back(skipped(kNames[1], "needs a solution-separable base, macroactions and |A0| > 1"));
  } else {
    rep.records.push_back(evaluated(kNames[1], learn_ratio, factor * ic_sup.raw, opt.slack));
  }

  if (!strict_macro || a0 < 2) {
    rep.records.push_back(skipped(kNames[2], "needs a strict macroaction augmentation of a separable base"));
  } else {
    const double threshold = (1.0 / (static_cast<double>(a0) + 1.0)) * (1.0 - 1.0 / std::log(static_cast<double>(a0)));
    const std::string note = fmt("one_minus_ic", 1.0 - ic_sup.raw) + " " + fmt("threshold", threshold);
    if (1.0 - ic_sup.raw > threshold) {
      rep.records.push_back(skipped(kNames[2], "incompressibility condition fails: " + note));
    } else {
      BoundRecord r = evaluated(kNames[2], learn_ratio, 1.0, 0.0, note);
      r.holds = learn_ratio > 1.0;
      rep.records.push_back(r);
    }
  }

  rep.records.push_back(check_exploration_entropy_density(aug, p, opt.delta, opt.q, opt.slack));

  if (!separable_macro || a0 < 2 || !(opt.delta > 0.0 && opt.delta < 1.0)) {
    rep.records.push_back(skipped(kNames[4], "needs a separable base, macroactions, |A0| > 1 and 0 < delta < 1"));
  } else {
    const double ic_delta = ic_at_epsilon(p.entropy(), mean_solution_length(p, d0), static_cast<double>(a0), opt.delta);
    rep.records.push_back(
        evaluated(kNames[4], rep.j_explore_aug / rep.j_explore_base, ic_delta, opt.slack, "epsilon=delta, unclamped"));
  }

  rep.records.push_back(check_kl_condition_worse(base, augmented, p, rep.base_separable, opt));
  rep.records.push_back(check_uniform_solutions_gap(base, augmented, p, rep.base_separable, opt));

  if (a0 < 2) {
    rep.records.push_back(skipped(kNames[7], "needs |A0| > 1"));
  } else {
    std::size_t e = 1;
    for (const skills::Skill& z : augmented.skills) e = std::max(e, skills::behavior_variety(z, base));
    bool exact = rep.base_separable;
    double h_min = p.entropy();
    if (!exact && p.support_size() <= opt.merge.max_support && rep.base_separable_known) {
      const ExpressiveIc ex = ic_expressive(base, p, static_cast<double>(e), opt.sup, opt.merge);
      exact = ex.method == AssignmentMethod::separable_exact;
      h_min = ex.min_entropy;
    }
    if (!exact) {
      rep.records.push_back(skipped(kNames[7], "minimum canonical entropy not exact for this base"));
    } else {
      const IcValue ic =
          ic_from_stats(h_min, mean_solution_length(p, d0), static_cast<double>(a0) * static_cast<double>(e), opt.sup);
      rep.records.push_back(
          evaluated(kNames[7], learn_ratio, factor * ic.raw, opt.slack, "expressivity=" + std::to_string(e)));
    }
  }

  rep.records.push_back(check_length_separated_gap(base, augmented, p, rep.base_separable, opt));

  bool aug_separable = separable_macro;
  if (!aug_separable) aug_separable = solution_separable(aug, opt.separability_pair_budget).value_or(false);
  rep.records.push_back(check_density_at_most_one(aug, opt.delta, aug_separable, opt.q, opt.slack));
  return rep;
}

BoundRecord explore_helps_learn_hurts(const TabularDsmdp& base, const StateDistribution& p, double delta,
                                      std::size_t num_skills, const QSolveOptions& qopt) {
  const std::string name = "explore_helps_learn_hurts";
  if (!solution_separable(base).value_or(false)) return skipped(name, "base not solution-separable");
  if (!(delta > p.max_prob() && delta < 1.0)) return skipped(name, "needs max p < delta < 1");
  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  const QTable q0 = solve_q(base, d0, delta, qopt);
  bool differs = false;
  for (StateId s = 0; s < base.num_states(); ++s)
    if (!base.is_goal(s) && d0.solvable(s) && std::abs(p.prob(s) - solution_density_weight(q0, s)) > 1e-12)
      differs = true;
  if (!differs) return skipped(name, "p coincides with the base density");

  const TightnessAugmentation t = tightness_augmentation(base, p, delta, num_skills);
  const TabularDsmdp& aug = t.augmented.table;
  const SolutionLengthTable dp = shortest_solution_lengths(aug);
  const QTable qp = solve_q(aug, dp, delta, qopt);
  const double learn = p_learning_difficulty(aug, p, dp) / p_learning_difficulty(base, p, d0);
  const double explore = p_exploration_difficulty(p, qp) / p_exploration_difficulty(p, q0);
  BoundRecord r;
  r.name = name;
  r.lhs = learn;
  r.rhs = explore;
  r.preconditions_met = true;
  r.holds = learn > 1.0 && explore < 1.0;
  r.notes = "lhs=J_learn ratio, rhs=J_explore ratio, skills=" + std::to_string(num_skills);
  return r;
}

}  // namespace dsmdp::metrics
