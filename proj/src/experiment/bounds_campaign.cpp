#include "dsmdp/experiment/bounds_campaign.hpp"

#include <algorithm>
#include <random>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/random_mdp.hpp"
#include "dsmdp/env/environment.hpp"
#include "dsmdp/metrics/difficulty.hpp"
#include "dsmdp/metrics/q_solver.hpp"
#include "dsmdp/metrics/report_json.hpp"

namespace dsmdp::experiment {

namespace {

struct Case {
  TabularDsmdp base;
  StateDistribution p;
};

// Random invertible base with a random p over its solvable states.
Case random_case(Rng& rng, const BoundsCampaignSpec& spec, std::size_t min_actions) {
  std::uniform_int_distribution<std::size_t> states(spec.min_states, spec.max_states);
  std::uniform_int_distribution<std::size_t> actions(min_actions, std::max(min_actions, spec.max_actions));
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    TabularDsmdp mdp = random_invertible_dsmdp(rng, states(rng), actions(rng), 0.1);
    const SolutionLengthTable d = shortest_solution_lengths(mdp);
    auto p = random_solvable_distribution(rng, mdp, d, mdp.num_states());
    if (p) return {std::move(mdp), std::move(*p)};
  }
  fail(ErrorCode::rejection_budget_exceeded, "no random base with a solvable state");
}

// 1 to 3 distinct macros of length 2 to 4.
std::vector<skills::Skill> random_macros(Rng& rng, std::size_t num_actions, std::size_t max_len = 4) {
  std::uniform_int_distribution<std::size_t> count(1, 3), len(2, max_len);
  std::uniform_int_distribution<ActionId> action(0, static_cast<ActionId>(num_actions - 1));
  std::vector<std::vector<ActionId>> seqs;
  const std::size_t k = count(rng);
  for (int guard = 0; seqs.size() < k && guard < 1000; ++guard) {
    std::vector<ActionId> m(len(rng));
    for (auto& a : m) a = action(rng);
    if (std::find(seqs.begin(), seqs.end(), m) == seqs.end()) seqs.push_back(std::move(m));
  }
  std::vector<skills::Skill> out;
  for (auto& m : seqs) out.push_back(skills::Skill::macro(std::move(m)));
  return out;
}

// 1 or 2 tabular skills, each state mapped to a random sequence of length 1 to 3.
std::vector<skills::Skill> random_tabular_skills(Rng& rng, const TabularDsmdp& base) {
  std::uniform_int_distribution<std::size_t> count(1, 2), len(1, 3);
  std::uniform_int_distribution<ActionId> action(0, static_cast<ActionId>(base.num_actions() - 1));
  std::vector<skills::Skill> out;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<ActionId>> per_state(base.num_states());
    for (StateId s = 0; s < base.num_states(); ++s) {
      if (base.is_goal(s)) continue;
      per_state[s].resize(len(rng));
      for (auto& a : per_state[s]) a = action(rng);
    }
    out.push_back(skills::Skill::tabular(per_state));
  }
  return out;
}

void record(BoundsCampaignResult& res, const std::string& group, std::size_t index, const metrics::BoundRecord& r) {
  BoundCounts& c = res.counts[r.name];
  if (!r.preconditions_met) {
    ++c.skipped;
  } else if (r.holds) {
    ++c.held;
  } else {
    ++c.violated;
  }
  res.cases.push_back({group, index, r});
}

void record_all(BoundsCampaignResult& res, const std::string& group, std::size_t index,
                const metrics::BoundsReport& rep) {
  for (const auto& r : rep.records) record(res, group, index, r);
}

}  // namespace

std::size_t BoundsCampaignResult::violations() const { return failures().size(); }

std::vector<BoundsCaseRecord> BoundsCampaignResult::failures() const {
  std::vector<BoundsCaseRecord> out;
  for (const auto& c : cases)
    if (c.record.violated()) out.push_back(c);
  return out;
}

BoundsCampaignResult run_bounds_campaign(const BoundsCampaignSpec& spec) {
  BoundsCampaignResult res;
  Rng rng(spec.seed);
  metrics::BoundsOptions opts;
  opts.delta = spec.delta;

  for (std::size_t i = 0; i < spec.separable_bases; ++i) {
    Case c = random_case(rng, spec, 2);
    auto aug = skills::augment(c.base, random_macros(rng, c.base.num_actions()),
                               skills::GoalPassMode::undefined_is_dead);
    record_all(res, "macro", i, metrics::bounds_report(c.base, aug, c.p, opts));
  }

  for (std::size_t i = 0; i < spec.skill_augmentations; ++i) {
    Case c = random_case(rng, spec, 1);
    auto aug = skills::augment(c.base, random_tabular_skills(rng, c.base), skills::GoalPassMode::undefined_is_dead);
    record_all(res, "skill", i, metrics::bounds_report(c.base, aug, c.p, opts));
  }

  if (spec.uniform_gap_macro_sets > 0) {
    const env::Environment seq = env::build_sequence_consume(2, 3);
    for (std::size_t i = 0; i < spec.uniform_gap_macro_sets; ++i) {
      auto aug = skills::augment(seq.mdp, random_macros(rng, 2, 3), skills::GoalPassMode::undefined_is_dead);
      record_all(res, "uniform_gap", i, metrics::bounds_report(seq.mdp, aug, seq.p, opts));
    }
  }

  if (spec.demos) {
    // Tightness construction on a 20-state invertible base, p uniform.
    Rng demo_rng(spec.seed ^ 0xD1B54A32D192ED03ULL);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      TabularDsmdp base = random_invertible_dsmdp(demo_rng, 20, 2, 0.0);
      const SolutionLengthTable d = shortest_solution_lengths(base);
      std::vector<StateId> support;
      for (StateId s = 0; s < base.num_states(); ++s)
        if (!base.is_goal(s) && d.solvable(s)) support.push_back(s);
      if (support.size() < 10) continue;
      const auto p = StateDistribution::uniform(support);
      record(res, "demo", 0, metrics::explore_helps_learn_hurts(base, p, 0.5, 200));
      break;
    }
    // KL condition: sequence_consume(2, 10) with p proportional to the base density.
    const env::Environment seq = env::build_sequence_consume(2, 10);
    metrics::BoundsOptions kl_opts = opts;
    kl_opts.delta = 0.5;
    const SolutionLengthTable d = shortest_solution_lengths(seq.mdp);
    const metrics::QTable q = metrics::solve_q(seq.mdp, d, kl_opts.delta, kl_opts.q);
    std::vector<std::pair<StateId, double>> w;
    for (StateId s = 0; s < seq.mdp.num_states(); ++s)
      if (!seq.mdp.is_goal(s) && d.solvable(s)) w.emplace_back(s, metrics::solution_density_weight(q, s));
    const auto p = StateDistribution::from_weights(std::move(w));
    auto aug = skills::augment_with_macros(seq.mdp, {"ab"}, skills::GoalPassMode::undefined_is_dead);
    record(res, "demo", 1, metrics::check_kl_condition_worse(seq.mdp, aug, p, true, kl_opts));
  }
  return res;
}

nlohmann::json to_json(const BoundsCampaignResult& r, const BoundsCampaignSpec& spec) {
  nlohmann::json counts = nlohmann::json::object();
  std::size_t held = 0, skipped = 0, violated = 0;
  for (const auto& [name, c] : r.counts) {
    counts[name] = {{"holds", c.held}, {"skipped", c.skipped}, {"violated", c.violated}};
    held += c.held;
    skipped += c.skipped;
    violated += c.violated;
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures()) {
    auto j = metrics::to_json(f.record);
    j["group"] = f.group;
    j["case"] = f.index;
    failures.push_back(std::move(j));
  }
  nlohmann::json demos = nlohmann::json::array();
  for (const auto& c : r.cases)
    if (c.group == "demo") demos.push_back(metrics::to_json(c.record));
  return {{"parameters",
           {{"seed", spec.seed},
            {"separable_bases", spec.separable_bases},
            {"skill_augmentations", spec.skill_augmentations},
            {"uniform_gap_macro_sets", spec.uniform_gap_macro_sets},
            {"states", {spec.min_states, spec.max_states}},
            {"max_actions", spec.max_actions},
            {"delta", spec.delta}}},
          {"totals", {{"holds", held}, {"skipped", skipped}, {"violated", violated}}},
          {"by_record", counts},
          {"demos", demos},
          {"violations", failures}};
}

}  // namespace dsmdp::experiment
