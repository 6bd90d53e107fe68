#include "dsmdp/metrics/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "dsmdp/core/error.hpp"

namespace dsmdp::metrics {

void StochasticMdp::validate() const {
  if (num_actions == 0 || goal >= num_states || outcomes.size() != num_states * num_actions)
    fail(ErrorCode::invalid_argument, "malformed stochastic MDP");
  for (StateId s = 0; s < num_states; ++s) {
    if (s == goal) continue;
    for (ActionId a = 0; a < num_actions; ++a) {
      double total = 0.0;
      for (const Outcome& o : at(s, a)) {
        if (o.prob < 0.0 || (o.next != kDead && o.next >= num_states))
          fail(ErrorCode::invalid_argument, "bad stochastic outcome");
        total += o.prob;
      }
      if (std::abs(total - 1.0) > 1e-12) fail(ErrorCode::invalid_argument, "outcome probabilities must sum to 1");
    }
  }
}

StochasticMdp to_stochastic(const TabularDsmdp& mdp) {
  StochasticMdp out{mdp.num_states(), mdp.num_actions(), mdp.goal(), {}};
  out.outcomes.resize(mdp.num_states() * mdp.num_actions());
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (mdp.is_goal(s)) continue;
    for (ActionId a = 0; a < mdp.num_actions(); ++a) out.outcomes[s * mdp.num_actions() + a] = {{mdp.successor(s, a), 1.0}};
  }
  return out;
}

namespace {

// dist over live non-goal states after a prefix; goal mass is tracked separately
// because the goal absorbs nothing further (a mid-sequence arrival fails).
struct Enumerator {
  const StochasticMdp& mdp;
  std::size_t length;
  std::vector<std::vector<double>> stack;  // stack[k]: distribution after k actions
  double cumulative = 0.0;
  double depth = 0.0;
  std::uint64_t sequences = 0;
  std::uint64_t budget;
  bool done = false;

  // Distribution after applying a to `from`; returns goal mass.
  double step(const std::vector<double>& from, ActionId a, std::vector<double>& to) const {
    std::fill(to.begin(), to.end(), 0.0);
    double goal_mass = 0.0;
    for (StateId s = 0; s < mdp.num_states; ++s) {
      const double m = from[s];
      if (m == 0.0) continue;
      for (const Outcome& o : mdp.at(s, a)) {
        if (o.next == kDead) continue;
        if (o.next == mdp.goal) {
          goal_mass += m * o.prob;
        } else {
          to[o.next] += m * o.prob;
        }
      }
    }
    return goal_mass;
  }

  void visit(std::size_t k) {
    for (ActionId a = 0; a < mdp.num_actions && !done; ++a) {
      const double w = step(stack[k], a, stack[k + 1]);
      if (k + 1 == length) {
        if (++sequences > budget) fail(ErrorCode::budget_exceeded, "stochastic depth enumeration budget exceeded");
        if (w <= 0.0) continue;
        if (cumulative + w >= 1.0) {
          depth += (1.0 - cumulative) * static_cast<double>(length);
          cumulative = 1.0;
          done = true;
        } else {
          cumulative += w;
          depth += w * static_cast<double>(length);
        }
      } else {
        visit(k + 1);
      }
    }
  }
};

}  // namespace

WeightedDepth stochastic_weighted_depth(const StochasticMdp& mdp, StateId s, std::size_t max_len, double mass_tol,
                                        std::uint64_t sequence_budget) {
  if (s == mdp.goal || s >= mdp.num_states) fail(ErrorCode::invalid_argument, "depth needs a non-goal state");
  Enumerator e{mdp, 0, std::vector<std::vector<double>>(max_len + 1, std::vector<double>(mdp.num_states, 0.0)),
               0.0, 0.0, 0, sequence_budget};
  e.stack[0][s] = 1.0;
  for (std::size_t l = 1; l <= max_len && !e.done; ++l) {
    e.length = l;
    e.visit(0);
  }
  WeightedDepth out{e.depth, e.cumulative, e.sequences, !e.done};
  if (!e.done && 1.0 - e.cumulative > mass_tol)
    fail(ErrorCode::mass_shortfall,
         "solution mass " + std::to_string(e.cumulative) + " short of 1 at the length limit");
  return out;
}

double stochastic_learning_difficulty(const StochasticMdp& mdp, const StateDistribution& p, std::size_t max_len,
                                      double mass_tol) {
  const double mean = p.expectation(
      [&](StateId s) { return stochastic_weighted_depth(mdp, s, max_len, mass_tol).depth; });
  return static_cast<double>(mdp.num_actions) * mean;
}

QTable stochastic_q(const StochasticMdp& mdp, double delta, const QSolveOptions& options) {
  if (!(delta >= 0.0 && delta < 1.0)) fail(ErrorCode::invalid_argument, "delta must lie in [0, 1)");
  std::vector<double> cur(mdp.num_states, 0.0), next(mdp.num_states, 0.0);
  cur[mdp.goal] = next[mdp.goal] = 1.0;
  const double scale = (1.0 - delta) / static_cast<double>(mdp.num_actions);
  QTable out;
  out.delta = delta;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    double residual = 0.0;
    for (StateId s = 0; s < mdp.num_states; ++s) {
      if (s == mdp.goal) continue;
      double acc = 0.0;
      for (ActionId a = 0; a < mdp.num_actions; ++a)
        for (const Outcome& o : mdp.at(s, a))
          if (o.next != kDead) acc += o.prob * cur[o.next];
      next[s] = scale * acc;
      residual = std::max(residual, std::abs(next[s] - cur[s]));
    }
    cur.swap(next);
    out.iterations = it;
    out.residual = residual;
    if (residual <= options.tol) {
      out.q = std::move(cur);
      return out;
    }
  }
  throw NotConverged(out.iterations, out.residual);
}

}  // namespace dsmdp::metrics
