#include "dsmdp/rl/planner.hpp"

#include <algorithm>
#include <cmath>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"

namespace dsmdp::rl {

const char* to_string(PlannerVariant v) { return v == PlannerVariant::state ? "state" : "q"; }

namespace {

double successor_value(const std::vector<double>& v, const TabularDsmdp& mdp, StateId t) {
  if (t == kDead) return 0.0;
  return mdp.is_goal(t) ? 1.0 : v[t];
}

// p-weighted success of the greedy policy given per-(s, a) scores.
template <class Score>
double greedy_success(const TabularDsmdp& mdp, const StateDistribution& p, std::size_t horizon, Score&& score) {
  return p.expectation([&](StateId s) {
    for (std::size_t t = 0; t < horizon; ++t) {
      ActionId best = 0;
      double bv = score(s, 0);
      for (ActionId a = 1; a < mdp.num_actions(); ++a) {
        const double x = score(s, a);
        if (x > bv) {
          bv = x;
          best = a;
        }
      }
      const StateId nxt = mdp.successor(s, best);
      if (nxt == kDead) return 0.0;
      if (mdp.is_goal(nxt)) return 1.0;
      s = nxt;
    }
    return 0.0;
  });
}

}  // namespace

PlannerResult planner_value_iteration(const TabularDsmdp& mdp, const StateDistribution& p,
                                      const PlannerOptions& opt) {
  if (!(opt.alpha > 0.0 && opt.alpha <= 1.0)) fail(ErrorCode::config_invalid, "alpha must lie in (0, 1]");
  const std::size_t n = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  const SolutionLengthTable d = shortest_solution_lengths(mdp);
  require_solvable_support(p, mdp, d);
  auto v_star = [&](StateId s) { return d.solvable(s) ? 1.0 : 0.0; };

  PlannerResult res;
  auto check = [&](std::size_t sweep, double reward, double error) {
    if (!res.sweeps_to_reward && reward >= opt.stop_reward) res.sweeps_to_reward = sweep;
    if (!res.sweeps_to_error && error <= opt.stop_error) res.sweeps_to_error = sweep;
    return res.sweeps_to_reward && res.sweeps_to_error;
  };

  if (opt.variant == PlannerVariant::state) {
    std::vector<double> v(n, 0.0), next(n, 0.0);
    v[mdp.goal()] = next[mdp.goal()] = 1.0;
    for (std::size_t sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
      for (StateId s = 0; s < n; ++s) {
        if (mdp.is_goal(s)) continue;
        double best = 0.0;
        for (StateId t : mdp.row(s)) best = std::max(best, successor_value(v, mdp, t));
        next[s] = (1.0 - opt.alpha) * v[s] + opt.alpha * best;
      }
      v.swap(next);
      res.sweeps = sweep;
      const double error = p.expectation([&](StateId s) { return std::abs(v[s] - v_star(s)); });
      const double reward = greedy_success(mdp, p, opt.horizon,
                                           [&](StateId s, ActionId a) { return successor_value(v, mdp, mdp.successor(s, a)); });
      if (check(sweep, reward, error)) return res;
    }
  } else {
    std::vector<double> q(n * na, 0.0), next(n * na, 0.0), vmax(n, 0.0);
    auto q_star = [&](StateId s, ActionId a) {
      const StateId t = mdp.successor(s, a);
      return t != kDead && (mdp.is_goal(t) || d.solvable(t)) ? 1.0 : 0.0;
    };
    for (std::size_t sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
      for (StateId s = 0; s < n; ++s) {
        if (mdp.is_goal(s)) continue;
        vmax[s] = *std::max_element(&q[s * na], &q[s * na] + na);
      }
      vmax[mdp.goal()] = 1.0;
      for (StateId s = 0; s < n; ++s) {
        if (mdp.is_goal(s)) continue;
        for (ActionId a = 0; a < na; ++a) {
          const StateId t = mdp.successor(s, a);
          const double target = t == kDead ? 0.0 : vmax[t];
          next[s * na + a] = (1.0 - opt.alpha) * q[s * na + a] + opt.alpha * target;
        }
      }
      q.swap(next);
      res.sweeps = sweep;
      const double error = p.expectation([&](StateId s) {
        double e = 0.0;
        for (ActionId a = 0; a < na; ++a) e += std::abs(q[s * na + a] - q_star(s, a));
        return e / static_cast<double>(na);
      });
      const double reward = greedy_success(mdp, p, opt.horizon, [&](StateId s, ActionId a) { return q[s * na + a]; });
      if (check(sweep, reward, error)) return res;
    }
  }
  if (res.sweeps_to_error || res.sweeps_to_reward) return res;
  throw NotConverged(opt.max_sweeps, 0.0);
}

std::vector<std::optional<std::size_t>> first_exact_sweeps(const TabularDsmdp& mdp, double alpha,
                                                           std::size_t max_sweeps) {
  const std::size_t n = mdp.num_states();
  std::vector<double> v(n, 0.0), next(n, 0.0);
  v[mdp.goal()] = next[mdp.goal()] = 1.0;
  std::vector<std::optional<std::size_t>> first(n);
  first[mdp.goal()] = 0;
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (StateId s = 0; s < n; ++s) {
      if (mdp.is_goal(s)) continue;
      double best = 0.0;
      for (StateId t : mdp.row(s)) best = std::max(best, successor_value(v, mdp, t));
      next[s] = (1.0 - alpha) * v[s] + alpha * best;
    }
    v.swap(next);
    for (StateId s = 0; s < n; ++s)
      if (!first[s] && v[s] == 1.0) first[s] = sweep;
  }
  return first;
}

}  // namespace dsmdp::rl
