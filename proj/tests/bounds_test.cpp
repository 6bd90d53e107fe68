#include <random>

#include "doctest.h"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/random_mdp.hpp"
#include "dsmdp/env/environment.hpp"
#include "dsmdp/experiment/bounds_campaign.hpp"
#include "dsmdp/metrics/bounds.hpp"
#include "dsmdp/metrics/difficulty.hpp"
#include "dsmdp/skills/augment.hpp"
#include "test_util.hpp"

using namespace dsmdp;
using namespace dsmdp::metrics;

namespace {

std::vector<skills::Skill> random_macros(Rng& rng, std::size_t na, std::size_t count, std::size_t max_len) {
  std::vector<skills::Skill> z;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<ActionId> seq(2 + rng() % (max_len - 1));
    for (auto& a : seq) a = static_cast<ActionId>(rng() % na);
    z.push_back(skills::Skill::macro(seq));
  }
  return z;
}

}  // namespace

TEST_CASE("trivial augmentation") {
  Rng rng(1);
  const auto base = random_invertible_dsmdp(rng, 12, 3, 0.0);
  const auto d = shortest_solution_lengths(base);
  const auto p = random_solvable_distribution(rng, base, d, 5);
  REQUIRE(p);
  const auto rep = bounds_report(base, skills::augment(base, {}), *p);
  const auto* r = rep.find("learning_ratio_unmerged_bound");
  REQUIRE(r);
  CHECK(r->preconditions_met);
  CHECK(r->lhs == doctest::Approx(1.0));
  CHECK(r->rhs <= 1.0 + 1e-12);
  CHECK(r->holds);
  CHECK(rep.violations() == 0);
}

TEST_CASE("macro augmentations of separable bases satisfy every bound") {
  Rng rng(2024);
  std::size_t evaluated = 0;
  for (int t = 0; t < 60; ++t) {
    const auto base = random_invertible_dsmdp(rng, 4 + t % 20, 2 + t % 2, 0.1);
    const auto d = shortest_solution_lengths(base);
    const auto p = random_solvable_distribution(rng, base, d, 8);
    if (!p) continue;
    const auto aug = skills::augment(base, random_macros(rng, base.num_actions(), 1 + t % 3, 4));
    const auto rep = bounds_report(base, aug, *p);
    CHECK(rep.base_separable);
    for (const auto& r : rep.records) {
      INFO(r.name << " lhs=" << r.lhs << " rhs=" << r.rhs << " " << r.notes);
      CHECK(!r.violated());
    }
    evaluated += rep.find("learning_ratio_merged_bound")->preconditions_met;
  }
  CHECK(evaluated > 40);
}

TEST_CASE("uniform-solutions gap on sequence consume at delta 0") {
  const auto e = env::build_sequence_consume(2, 3);
  BoundsOptions opt;
  opt.delta = 0.0;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::string> macros;
    const std::size_t k = 1 + rng() % 3;
    while (macros.size() < k) {
      std::string m(2 + rng() % 2, 'a');
      for (auto& c : m) c = static_cast<char>('a' + rng() % 2);
      if (std::find(macros.begin(), macros.end(), m) == macros.end()) macros.push_back(m);
    }
    const auto aug = skills::augment_with_macros(e.mdp, macros);
    const auto r = check_uniform_solutions_gap(e.mdp, aug, e.p, true, opt);
    INFO(r.notes);
    CHECK(r.preconditions_met);
    CHECK(r.holds);
    const double a0 = 2.0, ap = 2.0 + static_cast<double>(k);
    CHECK(r.rhs == doctest::Approx((a0 / ap) * (1 - a0 / ap)));
  }
}

TEST_CASE("success mode skips the formal claims") {
  const auto e = env::build_chain(4);
  const auto base = testutil::make_mdp(2, 0, {{}, {0, kDead}, {1, kDead}, {2, kDead}, {3, kDead}});
  const auto aug = skills::augment_with_macros(base, {"a0 a0"}, skills::GoalPassMode::success);
  const auto rep = bounds_report(base, aug, e.p);
  CHECK(rep.violations() == 0);
  CHECK(rep.held() == 0);
  CHECK(rep.skipped() == rep.records.size());
}

TEST_CASE("adding skills never lengthens solutions; the |A| factor carries any loss") {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto base = random_dsmdp(rng, 10, 2, 0.1);
    const auto d = shortest_solution_lengths(base);
    const auto p = random_solvable_distribution(rng, base, d, 5);
    if (!p) continue;
    const auto aug = skills::augment(base, random_macros(rng, 2, 2, 3), skills::GoalPassMode::success);
    const auto dp = shortest_solution_lengths(aug.table);
    const double m0 = mean_solution_length(*p, d), mp = mean_solution_length(*p, dp);
    CHECK(mp <= m0 + 1e-12);
    CHECK(p_learning_difficulty(aug.table, *p, dp) == doctest::Approx(4.0 * mp));
    CHECK(p_learning_difficulty(base, *p, d) == doctest::Approx(2.0 * m0));
  }
}

TEST_CASE("density at most one record") {
  Rng rng(12);
  const auto m = random_invertible_dsmdp(rng, 15, 3, 0.1);
  const auto r = check_density_at_most_one(m, 0.05, true);
  CHECK(r.preconditions_met);
  CHECK(r.holds);
  CHECK(r.lhs <= 1.0 + 1e-9);
  CHECK(!check_density_at_most_one(m, 0.05, false).preconditions_met);
}

TEST_CASE("skills can help exploration while hurting learning") {
  Rng rng(3);
  const auto base = random_invertible_dsmdp(rng, 20, 2, 0.0);
  const auto d = shortest_solution_lengths(base);
  std::vector<StateId> solvable;
  for (StateId s = 0; s < 20; ++s)
    if (!base.is_goal(s) && d.solvable(s)) solvable.push_back(s);
  const auto p = StateDistribution::uniform(solvable);
  const auto r = explore_helps_learn_hurts(base, p, 0.5, 200);
  INFO(r.notes);
  CHECK(r.preconditions_met);
  CHECK(r.lhs > 1.0);
  CHECK(r.rhs < 1.0);
  CHECK(r.holds);
}

TEST_CASE("small randomized campaign has no violations") {
  experiment::BoundsCampaignSpec spec;
  spec.separable_bases = 30;
  spec.skill_augmentations = 30;
  spec.uniform_gap_macro_sets = 10;
  spec.seed = 77;
  const auto res = experiment::run_bounds_campaign(spec);
  CHECK(res.violations() == 0);
  CHECK(res.failures().empty());
  CHECK(res.counts.at("learning_ratio_merged_bound").held > 0);
  CHECK(res.counts.at("exploration_uniform_solutions_gap").held == 10);
  const auto j = experiment::to_json(res, spec);
  CHECK(j.at("totals").at("violated") == 0);
  CHECK(j.at("demos").size() == 2);
}
