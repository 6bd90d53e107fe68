// Acceptance checks. Each criterion prints one PASS/FAIL line with the
// measured quantities; the process exits nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/random_mdp.hpp"
#include "dsmdp/env/environment.hpp"
#include "dsmdp/experiment/bounds_campaign.hpp"
#include "dsmdp/experiment/correlate.hpp"
#include "dsmdp/experiment/metric_table.hpp"
#include "dsmdp/experiment/rl_campaign.hpp"
#include "dsmdp/experiment/variants.hpp"
#include "dsmdp/mdl/corpus.hpp"
#include "dsmdp/mdl/discover.hpp"
#include "dsmdp/mdl/objectives.hpp"
#include "dsmdp/metrics/difficulty.hpp"
#include "dsmdp/metrics/incompressibility.hpp"
#include "dsmdp/metrics/q_solver.hpp"
#include "dsmdp/metrics/report.hpp"
#include "dsmdp/metrics/tightness.hpp"
#include "dsmdp/rl/planner.hpp"
#include "dsmdp/skills/augment.hpp"

using namespace dsmdp;

namespace {

// Pinned tolerances and thresholds.
constexpr double kChainRuntimeSec = 1.0;
constexpr double kQOracleTol = 1e-8;
constexpr std::size_t kQOracleMaxLen = 60;
constexpr double kQOracleRuntimeSec = 30.0;
constexpr double kBoundsRuntimeSec = 300.0;
constexpr double kTightnessGap = 0.05;
constexpr double kTightnessRuntimeSec = 60.0;
constexpr double kDensitySlack = 1e-9;
constexpr double kCubeRuntimeSec = 1800.0;
constexpr double kCorrelationMin = 0.80;
constexpr double kCorrelationRuntimeSec = 7200.0;
constexpr double kPlannerMin = 0.9;
constexpr double kPlannerRuntimeSec = 600.0;
constexpr double kDiscoverEmptyFraction = 0.95;
// Uniform p_a makes L5 = L7 exactly; the two evaluations may differ by an ulp.
constexpr double kOrderRelTol = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// 1. Value iteration with alpha = 1 on chain(30).
Verdict lemma_exactness() {
  const auto t0 = Clock::now();
  const auto chain = env::build_chain(30);
  const auto first = rl::first_exact_sweeps(chain.mdp, 1.0, 1000);
  std::size_t wrong = 0;
  for (StateId s = 1; s <= 30; ++s)
    if (!first[s] || *first[s] != s) ++wrong;
  const double sec = seconds_since(t0);
  return {wrong == 0 && sec < kChainRuntimeSec, fmt("states off by any sweep: %zu/30, runtime %.3fs", wrong, sec)};
}

// Count-by-length enumeration of solutions, truncated at max_len, with the
// truncation tail bounded by the surviving weighted mass.
std::pair<double, double> q_by_enumeration(const TabularDsmdp& m, StateId s, double delta, std::size_t max_len) {
  if (m.is_goal(s)) return {1.0, 0.0};
  const long double w = (1.0L - delta) / static_cast<long double>(m.num_actions());
  std::vector<long double> cur(m.num_states(), 0.0L), next(m.num_states());
  cur[s] = 1.0L;
  long double q = 0.0L;
  for (std::size_t l = 1; l <= max_len; ++l) {
    std::fill(next.begin(), next.end(), 0.0L);
    long double hit = 0.0L;
    for (StateId t = 0; t < m.num_states(); ++t) {
      if (cur[t] == 0.0L) continue;
      for (StateId u : m.row(t)) {
        if (u == kDead) continue;
        if (m.is_goal(u)) hit += cur[t];
        else next[u] += cur[t];
      }
    }
    q += hit * w;
    for (StateId t = 0; t < m.num_states(); ++t) cur[t] = next[t] * w;
  }
  long double tail = 0.0L;
  for (long double x : cur) tail += x;
  return {static_cast<double>(q), static_cast<double>(tail)};
}

// 2. solve_q against the enumeration oracle.
Verdict q_oracle() {
  const auto t0 = Clock::now();
  Rng rng(2);
  double worst = 0.0, worst_tail = 0.0;
  std::size_t mdps = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 11, na = 1 + rng() % 3;
    const auto m = random_absorbing_dsmdp(rng, n, na);
    ++mdps;
    for (double delta : {0.0, 0.02, 0.1}) {
      const auto q = metrics::solve_q(m, delta);
      for (StateId s = 0; s < n; ++s) {
        const auto [oracle, tail] = q_by_enumeration(m, s, delta, kQOracleMaxLen);
        worst = std::max(worst, std::abs(q.q[s] - oracle));
        worst_tail = std::max(worst_tail, tail);
      }
    }
  }
  const double sec = seconds_since(t0);
  return {worst <= kQOracleTol && worst_tail <= kQOracleTol && sec < kQOracleRuntimeSec,
          fmt("%zu MDPs x 3 deltas, max |q - oracle| = %.3g, max truncation tail = %.3g, runtime %.2fs", mdps, worst,
              worst_tail, sec)};
}

experiment::BoundsCampaignResult& campaign() {
  static experiment::BoundsCampaignResult res = experiment::run_bounds_campaign(experiment::BoundsCampaignSpec{});
  return res;
}

// 3. Randomized bound campaign.
Verdict bound_campaign() {
  const auto t0 = Clock::now();
  const auto& res = campaign();
  const double sec = seconds_since(t0);
  std::size_t macro_cases = 0, unmerged_held = 0, merged_held = 0, skill_held = 0, gap_held = 0;
  std::set<std::size_t> macro_ids, skill_ids;
  for (const auto& c : res.cases) {
    const auto& r = c.record;
    const bool ok = r.preconditions_met && r.holds;
    if (c.group == "macro") {
      macro_ids.insert(c.index);
      unmerged_held += ok && r.name == "learning_ratio_unmerged_bound";
      merged_held += ok && r.name == "learning_ratio_merged_bound";
    } else if (c.group == "skill") {
      skill_ids.insert(c.index);
      skill_held += ok && r.name == "exploration_entropy_density_bound";
    } else if (c.group == "uniform_gap") {
      gap_held += ok && r.name == "exploration_uniform_solutions_gap";
    }
  }
  macro_cases = macro_ids.size();
  const std::size_t violations = res.violations();
  const bool pass = violations == 0 && macro_cases == 200 && unmerged_held == 200 && merged_held == 200 &&
                    skill_ids.size() == 200 && skill_held == 200 && gap_held == 50 && sec < kBoundsRuntimeSec;
  return {pass, fmt("violations %zu; macro cases %zu (unmerged bound held %zu, merged bound held %zu); skill cases "
                    "%zu (entropy-density bound held %zu); uniform-gap held %zu/50; runtime %.2fs",
                    violations, macro_cases, unmerged_held, merged_held, skill_ids.size(), skill_held, gap_held, sec)};
}

// 4. Tightness construction on a 20-state separable base.
Verdict tightness() {
  const auto t0 = Clock::now();
  Rng rng(31);
  const auto base = random_invertible_dsmdp(rng, 20, 2, 0.0);
  const auto d = shortest_solution_lengths(base);
  std::vector<StateId> solvable;
  for (StateId s = 0; s < 20; ++s)
    if (!base.is_goal(s) && d.solvable(s)) solvable.push_back(s);
  const auto p = StateDistribution::uniform(solvable);
  const double delta = 0.5;
  const double bound = p.entropy() - std::log((1 - delta) / delta);
  std::vector<double> je;
  bool matching = false, entropy_equal = false;
  for (std::size_t K : {10u, 100u, 1000u}) {
    const auto t = metrics::tightness_augmentation(base, p, delta, K);
    je.push_back(metrics::p_exploration_difficulty(p, metrics::solve_q(t.augmented.table, delta)));
    if (K == 1000) {
      const auto m = metrics::ic_merged(base, t.augmented.table, p, metrics::EpsilonSpec{});
      matching = m.method == metrics::AssignmentMethod::matching_exact;
      entropy_equal = std::abs(m.merged_entropy - p.entropy()) <= 1e-12;
    }
  }
  const bool monotone = je[0] >= je[1] && je[1] >= je[2] && je[2] >= bound - 1e-12;
  const double gap = je[2] - bound;
  const double sec = seconds_since(t0);
  return {monotone && gap < kTightnessGap && matching && entropy_equal && delta > p.max_prob() &&
              sec < kTightnessRuntimeSec,
          fmt("support %zu, delta %.2f, bound %.6f, J_explore K=10/100/1000: %.6f/%.6f/%.6f, gap %.4g, "
              "merged method %s, H[P+]=H[p] %s, runtime %.2fs",
              p.support_size(), delta, bound, je[0], je[1], je[2], gap, matching ? "matching_exact" : "other",
              entropy_equal ? "yes" : "no", sec)};
}

// 5. Density conservation over the campaign's separable MDPs.
Verdict density() {
  const auto& res = campaign();
  std::size_t evaluated = 0;
  double worst = 0.0;
  bool ok = true;
  for (const auto& c : res.cases) {
    if (c.record.name != "density_at_most_one" || !c.record.preconditions_met) continue;
    ++evaluated;
    worst = std::max(worst, c.record.lhs);
    ok &= c.record.lhs <= 1.0 + kDensitySlack;
  }
  return {ok && evaluated > 0, fmt("%zu separable augmented MDPs, max density %.12f", evaluated, worst)};
}

// 6. Incompressibility ordering under sup over epsilon in (0, 1/2].
Verdict ic_ordering() {
  const metrics::EpsilonSpec mode{metrics::EpsilonMode::sup_grid, 0.02, 0.5, 2001};
  const auto cliff = env::build_cliff_walking();
  const double ic_cliff = metrics::ic_unmerged(cliff.mdp, cliff.p, mode).value;
  const auto puzzle = env::build_n_puzzle(3, env::VacuousMode::noop);
  const double ic_puzzle = metrics::ic_unmerged(puzzle.mdp, puzzle.p, mode).value;
  const auto t0 = Clock::now();
  const auto cube = env::build_pocket_cube();
  metrics::DifficultyOptions opts;
  opts.merged = false;
  const auto rep = metrics::difficulty_report(cube.mdp, cube.p, opts);
  const double sec = seconds_since(t0);
  const double ic_cube = rep.ic_sup_half->value;
  return {ic_cliff < ic_puzzle && ic_puzzle < ic_cube && cube.mdp.num_states() == 3674160 && sec < kCubeRuntimeSec,
          fmt("mode sup_grid eps in (0, 0.5]: cliff %.4f < 8puzzle %.4f < cube %.4f; cube %zu states, full pipeline "
              "(build + BFS + q + scramble + report) %.1fs",
              ic_cliff, ic_puzzle, ic_cube, cube.mdp.num_states(), sec)};
}

// 7. Correlation between log N and log J on cliff walking.
Verdict correlation() {
  const auto t0 = Clock::now();
  experiment::ExperimentSpec spec;
  const auto variants = experiment::build_variants(spec);
  const auto env = env::build_cliff_walking();
  const auto rows = experiment::compute_metric_table(env, variants, spec);
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto runs = experiment::run_rl_campaign(env, variants, spec, {jobs, ""});
  const auto c = experiment::correlate(rows, runs, "q_learning", experiment::NCriterion::reward);
  bool equal = c.mean_r == c.mean_r_arithmetic;
  for (const auto& s : c.per_seed) equal &= s.geometric.r == s.arithmetic.r;
  const double sec = seconds_since(t0);
  return {variants.size() == 32 && c.mean_r >= kCorrelationMin && equal && sec < kCorrelationRuntimeSec,
          fmt("%zu variants x %zu seeds, r = %.3f +/- %.3f (seeds used %zu, excluded runs %zu), arithmetic r = %.3f "
              "(identical: %s), runtime %.1fs",
              variants.size(), spec.seeds.size(), c.mean_r, c.se_r, c.per_seed.size(), c.excluded_runs.size(),
              c.mean_r_arithmetic, equal ? "yes" : "no", sec)};
}

// 8. Planner sweeps against E_p[d].
Verdict planner() {
  const auto t0 = Clock::now();
  experiment::ExperimentSpec spec;
  const auto variants = experiment::build_variants(spec);
  const auto env = env::build_cliff_walking();
  const auto st = experiment::correlate_planner(
      experiment::run_planner_campaign(env, variants, spec, rl::PlannerVariant::state), "state");
  const auto qv =
      experiment::correlate_planner(experiment::run_planner_campaign(env, variants, spec, rl::PlannerVariant::q), "q");
  const double sec = seconds_since(t0);
  return {st.r_error >= kPlannerMin && qv.r_error >= kPlannerMin && sec < kPlannerRuntimeSec,
          fmt("r(sweeps to error <= %.2f, E_p[d]): state %.4f (%zu variants), Q %.4f (%zu variants), runtime %.2fs",
              spec.planner_stop_error, st.r_error, st.points, qv.r_error, qv.points, sec)};
}

mdl::Corpus random_corpus(std::mt19937_64& rng, std::size_t count, std::size_t alphabet, std::size_t max_len) {
  mdl::Corpus c;
  for (std::size_t i = 0; i < alphabet; ++i) c.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<ActionId> s(1 + rng() % max_len);
    for (auto& a : s) a = static_cast<ActionId>(rng() % alphabet);
    c.solutions.push_back(std::move(s));
  }
  return c;
}

// 9. Description-length identities and greedy discovery.
Verdict mdl() {
  using mdl::Objective;
  std::mt19937_64 rng(9);
  std::size_t identity_fail = 0, order_fail = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto c = random_corpus(rng, 1 + rng() % 20, 2 + rng() % 3, 10);
    std::vector<std::vector<ActionId>> macros;
    for (int k = 0, n = static_cast<int>(rng() % 3); k < n; ++k) {
      const auto& s = c.solutions[rng() % c.solutions.size()];
      if (s.size() < 2) continue;
      const std::size_t i = rng() % (s.size() - 1), l = 2 + rng() % (s.size() - i - 1);
      std::vector<ActionId> m(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + l));
      if (std::find(macros.begin(), macros.end(), m) == macros.end()) macros.push_back(m);
    }
    const auto a = mdl::abstract_corpus(c, macros);
    const double l4 = mdl::objective(a, Objective::L4), l5 = mdl::objective(a, Objective::L5),
                 l7 = mdl::objective(a, Objective::L7);
    identity_fail += l5 != a.mean_length * a.action_entropy();
    identity_fail += l7 != a.mean_length * std::log(static_cast<double>(a.num_actions()));
    const double slack = kOrderRelTol * std::max(1.0, l7);
    order_fail += !(l5 <= l7 + slack) || !(l4 >= l5 - slack);
  }

  const auto rr = mdl::corpus_from_strings(std::vector<std::string>(50, "RRRRRRRR"), {"U", "R", "D", "L"});
  const auto found = mdl::discover_macroactions(rr, Objective::L7);
  bool decreasing = found.trace.size() >= 2;
  for (std::size_t i = 1; i < found.trace.size(); ++i) decreasing &= found.trace[i] < found.trace[i - 1];

  std::size_t empty = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 r(seed);
    empty += mdl::discover_macroactions(random_corpus(r, 20, 3, 10), Objective::L7).macros.empty();
  }
  const bool pass = identity_fail == 0 && order_fail == 0 && decreasing &&
                    static_cast<double>(empty) >= kDiscoverEmptyFraction * 100;
  return {pass, fmt("identity mismatches %zu, ordering failures %zu over 1000 corpora; repeated-R trace %.4f -> %.4f "
                    "(%zu macros, strictly decreasing: %s); empty result on %zu/100 random corpora",
                    identity_fail, order_fail, found.trace.front(), found.trace.back(), found.macros.size(),
                    decreasing ? "yes" : "no", empty)};
}

// 10. Mid-sequence goal arrival under both conventions, checked on every cell.
Verdict goal_pass() {
  const auto cliff = env::build_cliff_walking();
  const auto& m = cliff.mdp;
  std::size_t cells = 0, wrong = 0, dead_hits = 0;
  for (const std::string macro : {"DD", "RR", "RDR", "URRD"}) {
    const auto seq = parse_actions(m, macro);
    const auto dead = skills::augment_with_macros(m, {macro}, skills::GoalPassMode::undefined_is_dead);
    const auto succ = skills::augment_with_macros(m, {macro}, skills::GoalPassMode::success);
    for (StateId s = 0; s < m.num_states(); ++s) {
      if (m.is_goal(s)) continue;
      // Fold the sequence by hand.
      StateId cur = s;
      bool early = false;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        cur = m.successor(cur, seq[i]);
        if (cur == kDead) break;
        if (m.is_goal(cur)) {
          early = i + 1 < seq.size();
          break;
        }
      }
      const StateId want_dead = early ? kDead : cur;
      const StateId want_succ = cur;
      ++cells;
      dead_hits += early;
      wrong += dead.table.successor(s, 4) != want_dead;
      wrong += succ.table.successor(s, 4) != want_succ;
    }
  }
  const StateId above = env::cliff_state(cliff, 2, 11);
  const auto dd_dead = skills::augment_with_macros(m, {"DD"}, skills::GoalPassMode::undefined_is_dead);
  const auto dd_succ = skills::augment_with_macros(m, {"DD"}, skills::GoalPassMode::success);
  const bool example = dd_dead.table.successor(above, 4) == kDead && dd_succ.table.successor(above, 4) == m.goal();
  return {wrong == 0 && dead_hits > 0 && example,
          fmt("%zu (state, macro) cells, %zu mid-sequence arrivals, mismatches %zu; 'DD' above the goal: DEAD vs goal "
              "%s",
              cells, dead_hits, wrong, example ? "yes" : "no")};
}

const std::vector<std::pair<const char*, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Verdict()>>> list = {
      {"value iteration exactness on chain(30)", lemma_exactness},
      {"q solver vs solution enumeration", q_oracle},
      {"randomized bound campaign", bound_campaign},
      {"tightness construction", tightness},
      {"solution density at most one", density},
      {"incompressibility ordering and cube runtime", ic_ordering},
      {"cliff walking log N vs log J correlation", correlation},
      {"planner sweeps vs E_p[d]", planner},
      {"description-length identities and discovery", mdl},
      {"mid-sequence goal semantics", goal_pass},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  const auto& list = criteria();
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(list.size()); ++i) selected.push_back(i);
  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(list.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    Verdict v;
    try {
      v = list[n - 1].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s -- %s\n", v.pass ? "PASS" : "FAIL", n, list[n - 1].first, v.detail.c_str());
    std::fflush(stdout);
    all &= v.pass;
  }
  return all ? 0 : 1;
}
