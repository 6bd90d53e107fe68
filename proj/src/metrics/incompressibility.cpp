#include "dsmdp/metrics/incompressibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/separability.hpp"

namespace dsmdp::metrics {

const char* to_string(EpsilonMode m) {
  switch (m) {
    case EpsilonMode::fixed_epsilon: return "fixed_epsilon";
    case EpsilonMode::sup_grid: return "sup_grid";
    case EpsilonMode::boundary_limit: return "boundary_limit";
  }
  return "unknown";
}

EpsilonMode epsilon_mode_from_string(const std::string& s) {
  if (s == "fixed_epsilon" || s == "fixed") return EpsilonMode::fixed_epsilon;
  if (s == "sup_grid" || s == "sup") return EpsilonMode::sup_grid;
  if (s == "boundary_limit" || s == "boundary") return EpsilonMode::boundary_limit;
  fail(ErrorCode::config_invalid, "unknown epsilon mode: " + s);
}

namespace {

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Eq. in logit form, x = ln(eps / (1 - eps)).
double ic_logit(double entropy, double mean_d, double log_factor, double x) {
  return (entropy + x) / (mean_d * (log_factor + softplus(x)));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double ic_at_epsilon(double entropy, double mean_d, double action_factor, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorCode::invalid_argument, "epsilon must lie in (0, 1)");
  return (entropy - std::log((1.0 - epsilon) / epsilon)) / (mean_d * std::log(action_factor / (1.0 - epsilon)));
}

IcValue ic_from_stats(double entropy, double mean_d, double action_factor, const EpsilonSpec& spec) {
  if (!(action_factor > 1.0)) fail(ErrorCode::degenerate_denominator, "incompressibility needs |A| > 1");
  if (!(mean_d > 0.0) || !std::isfinite(mean_d))
    fail(ErrorCode::degenerate_denominator, "incompressibility needs a finite positive E_p[d]");
  IcValue out;
  out.mode = spec.mode;
  const double log_factor = std::log(action_factor);
  const double boundary = 1.0 / mean_d;

  switch (spec.mode) {
    case EpsilonMode::fixed_epsilon: {
      out.epsilon = spec.epsilon;
      out.raw = ic_at_epsilon(entropy, mean_d, action_factor, spec.epsilon);
      break;
    }
    case EpsilonMode::boundary_limit: {
      out.epsilon = std::numeric_limits<double>::quiet_NaN();
      out.raw = boundary;
      out.at_boundary = true;
      break;
    }
    case EpsilonMode::sup_grid: {
      if (!(spec.eps_max > 0.0 && spec.eps_max <= 1.0)) fail(ErrorCode::config_invalid, "eps_max must lie in (0, 1]");
      const bool open_top = spec.eps_max >= 1.0;
      const double lo = -40.0;
      const double hi = open_top ? 40.0 : std::log(spec.eps_max / (1.0 - spec.eps_max));
      const std::size_t n = std::max<std::size_t>(spec.grid_points, 3);
      auto f = [&](double x) { return ic_logit(entropy, mean_d, log_factor, x); };
      std::size_t best_i = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double v = f(x);
        if (v > best) {
          best = v;
          best_i = i;
        }
      }
      const double step = (hi - lo) / static_cast<double>(n - 1);
      double a = lo + step * (static_cast<double>(best_i) - 1.0);
      double b = lo + step * (static_cast<double>(best_i) + 1.0);
      a = std::max(a, lo);
      b = std::min(b, hi);
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = f(c), fd = f(d);
      for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = f(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = f(d);
        }
      }
      double x_best = lo + step * static_cast<double>(best_i);
      for (double x : {c, d}) {
        if (f(x) > best) {
          best = f(x);
          x_best = x;
        }
      }
      out.raw = best;
      out.epsilon = logistic(x_best);
      if (open_top && boundary >= best) {
        out.raw = boundary;
        out.epsilon = std::numeric_limits<double>::quiet_NaN();
        out.at_boundary = true;
      }
      break;
    }
  }
  out.value = std::max(out.raw, 0.0);
  out.clamped = out.raw < 0.0;
  return out;
}

IcValue ic_unmerged(const TabularDsmdp& mdp, const StateDistribution& p, const EpsilonSpec& spec) {
  return ic_unmerged(mdp, p, shortest_solution_lengths(mdp), spec);
}

IcValue ic_unmerged(const TabularDsmdp& mdp, const StateDistribution& p, const SolutionLengthTable& d,
                    const EpsilonSpec& spec) {
  require_solvable_support(p, mdp, d);
  return ic_from_stats(p.entropy(), mean_solution_length(p, d), static_cast<double>(mdp.num_actions()), spec);
}

namespace {

struct SolutionIndex {
  std::map<std::vector<ActionId>, std::uint32_t> ids;

  std::uint32_t id(std::vector<ActionId>&& seq) {
    auto [it, inserted] = ids.try_emplace(std::move(seq), static_cast<std::uint32_t>(ids.size()));
    return it->second;
  }
};

}  // namespace

MergedIc ic_merged(const TabularDsmdp& base, const TabularDsmdp& augmented, const StateDistribution& p,
                   const EpsilonSpec& spec, const MergeLimits& limits) {
  if (base.num_states() != augmented.num_states() || base.goal() != augmented.goal())
    fail(ErrorCode::invalid_argument, "augmented MDP must share the base state space");
  if (p.support_size() > limits.max_support)
    fail(ErrorCode::budget_exceeded, "support too large for merged incompressibility");
  const SolutionLengthTable d0 = shortest_solution_lengths(base);
  const SolutionLengthTable dp = shortest_solution_lengths(augmented);
  require_solvable_support(p, base, d0);

  MergedIc out;
  SolutionIndex index;
  std::vector<std::vector<std::uint32_t>> adj(p.support_size());
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    bool hit = false;
    auto sols = enumerate_shortest_solutions(augmented, dp, p.states()[i], limits.solutions_per_state, &hit);
    out.cap_hit = out.cap_hit || hit;
    for (auto& s : sols) adj[i].push_back(index.id(std::move(s)));
  }
  const AssignmentResult res = max_entropy_assignment(p.probs(), adj, index.ids.size(), limits.assignment);
  out.merged_entropy = res.entropy;
  out.method = res.method;
  out.ic = ic_from_stats(res.entropy, mean_solution_length(p, d0), static_cast<double>(base.num_actions()), spec);
  return out;
}

ExpressiveIc ic_expressive(const TabularDsmdp& mdp, const StateDistribution& p, double expressivity,
                           const EpsilonSpec& spec, const MergeLimits& limits, std::size_t length_slack) {
  if (!(expressivity >= 1.0)) fail(ErrorCode::invalid_argument, "expressivity must be at least 1");
  const SolutionLengthTable d = shortest_solution_lengths(mdp);
  require_solvable_support(p, mdp, d);
  const double mean_d = mean_solution_length(p, d);
  const double factor = static_cast<double>(mdp.num_actions()) * expressivity;

  ExpressiveIc out;
  bool separable = check_invertible_transitions(mdp, d);
  if (!separable && static_cast<std::uint64_t>(mdp.num_states()) * mdp.num_states() <= 16'000'000ULL)
    separable = check_solution_separable_exact(mdp).separable;
  if (separable) {
    out.min_entropy = p.entropy();
    out.method = AssignmentMethod::separable_exact;
  } else {
    if (p.support_size() > limits.max_support)
      fail(ErrorCode::budget_exceeded, "support too large for expressive incompressibility");
    SolutionIndex index;
    std::vector<std::vector<std::uint32_t>> adj(p.support_size());
    for (std::size_t i = 0; i < p.support_size(); ++i) {
      const StateId s = p.states()[i];
      bool hit = false;
      auto sols = enumerate_solutions_up_to(mdp, d, s, d.d[s] + length_slack, limits.solutions_per_state, &hit);
      out.cap_hit = out.cap_hit || hit;
      for (auto& sol : sols) adj[i].push_back(index.id(std::move(sol)));
    }
    const AssignmentResult res = min_entropy_assignment(p.probs(), adj, index.ids.size(), limits.assignment);
    out.min_entropy = res.entropy;
    out.method = res.method == AssignmentMethod::exhaustive_exact ? AssignmentMethod::exhaustive_exact
                                                                   : AssignmentMethod::greedy_upper_bound;
  }
  out.ic = ic_from_stats(out.min_entropy, mean_d, factor, spec);
  return out;
}

}  // namespace dsmdp::metrics
