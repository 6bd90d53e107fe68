#include "dsmdp/experiment/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>

#include "json.hpp"
#include "dsmdp/core/error.hpp"
#include "dsmdp/core/io.hpp"
#include "dsmdp/env/environment.hpp"
#include "dsmdp/experiment/bounds_campaign.hpp"
#include "dsmdp/experiment/correlate.hpp"
#include "dsmdp/experiment/csv.hpp"
#include "dsmdp/experiment/metric_table.hpp"
#include "dsmdp/experiment/rl_campaign.hpp"
#include "dsmdp/experiment/scatter.hpp"
#include "dsmdp/experiment/variants.hpp"
#include "dsmdp/mdl/discover.hpp"
#include "dsmdp/metrics/report_json.hpp"

namespace dsmdp::experiment {

namespace fs = std::filesystem;

namespace {

std::ostream& log(const CommandContext& ctx) { return ctx.log ? *ctx.log : std::cerr; }

std::string path_in(const CommandContext& ctx, const std::string& file) {
  fs::create_directories(ctx.out_dir);
  return (fs::path(ctx.out_dir) / file).string();
}

env::Environment build(const CommandContext& ctx) {
  log(ctx) << "building " << ctx.spec.env << "\n";
  return env::build_env(env::env_spec_from_name(ctx.spec.env));
}

bool is_planner(const std::string& algorithm) { return algorithm.rfind("planner_", 0) == 0; }

rl::PlannerVariant planner_variant(const std::string& algorithm) {
  if (algorithm == "planner_state") return rl::PlannerVariant::state;
  if (algorithm == "planner_q") return rl::PlannerVariant::q;
  fail(ErrorCode::config_invalid, "unknown planner '" + algorithm + "'");
}

std::string opt_count(const std::optional<std::size_t>& x) {
  return x ? std::to_string(*x) : std::string("NOT_REACHED");
}

std::optional<std::size_t> count_from(const std::string& s) {
  if (s == "NOT_REACHED" || s.empty()) return std::nullopt;
  return static_cast<std::size_t>(std::stoull(s));
}

void write_spec_copy(const CommandContext& ctx) { save_spec(path_in(ctx, "spec.json"), ctx.spec); }

}  // namespace

int cmd_build_env(const CommandContext& ctx) {
  const env::Environment e = build(ctx);
  save_binary(path_in(ctx, "env.bin"), e.mdp);
  nlohmann::json j = {{"name", e.name},
                      {"num_states", e.mdp.num_states()},
                      {"num_actions", e.mdp.num_actions()},
                      {"goal", e.mdp.goal()},
                      {"action_labels", e.mdp.action_labels()},
                      {"support_size", e.p.support_size()},
                      {"entropy_p", e.p.entropy()},
                      {"p", to_json(e.p)}};
  write_text(path_in(ctx, "env.json"), j.dump(2) + "\n");
  log(ctx) << e.name << ": " << e.mdp.num_states() << " states, " << e.mdp.num_actions() << " actions, support "
           << e.p.support_size() << "\n";
  return 0;
}

int cmd_gen_macros(const CommandContext& ctx) {
  const auto variants = build_variants(ctx.spec);
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& v : variants) sets.push_back({{"name", v.name}, {"kind", to_string(v.kind)}, {"macros", v.macros}});
  write_text(path_in(ctx, "macros.json"), sets.dump(2) + "\n");
  log(ctx) << variants.size() << " variants\n";
  return 0;
}

int cmd_metrics(const CommandContext& ctx) {
  const env::Environment e = build(ctx);
  const auto variants = build_variants(ctx.spec);
  const auto opts = difficulty_options(ctx.spec);
  const auto mode = skills::goal_pass_mode_from_string(ctx.spec.goal_pass_mode);
  std::vector<MetricRow> rows;
  nlohmann::json reports = nlohmann::json::array();
  for (const Variant& v : variants) {
    const auto aug = augment_variant(e.mdp, v, mode);
    const auto rep = metrics::difficulty_report(e.mdp, aug, e.p, opts);
    rows.push_back(metric_row(v, rep));
    auto j = metrics::to_json(rep, opts);
    j["variant"] = v.name;
    j["macros"] = v.macros;
    reports.push_back(std::move(j));
    log(ctx) << v.name << ": J_learn " << format_number(rep.j_learn) << ", J_explore " << format_number(rep.j_explore)
             << "\n";
  }
  write_spec_copy(ctx);
  write_text(path_in(ctx, "metrics.csv"), to_csv(to_csv_table(rows)));
  write_text(path_in(ctx, "metrics.json"), reports.dump(2) + "\n");
  return 0;
}

int cmd_run_rl(const CommandContext& ctx) {
  const env::Environment e = build(ctx);
  const auto variants = build_variants(ctx.spec);
  ExperimentSpec rl_spec = ctx.spec;
  rl_spec.algorithms.clear();
  std::vector<std::string> planners;
  for (const auto& a : ctx.spec.algorithms) (is_planner(a) ? planners : rl_spec.algorithms).push_back(a);
  write_spec_copy(ctx);

  if (!rl_spec.algorithms.empty()) {
    CampaignOptions co;
    co.jobs = ctx.jobs;
    co.out_dir = ctx.out_dir;
    const auto runs = run_rl_campaign(e, variants, rl_spec, co);
    write_text(path_in(ctx, "runs.csv"), to_csv(to_csv_table(runs)));
    std::size_t reached = 0;
    for (const auto& r : runs) reached += r.n_reward.has_value();
    log(ctx) << runs.size() << " runs, " << reached << " reached the reward threshold\n";
  }
  if (!planners.empty()) {
    CsvTable t;
    t.header = {"planner", "variant", "kind", "mean_d", "sweeps_to_reward", "sweeps_to_error"};
    for (const auto& name : planners) {
      for (const auto& o : run_planner_campaign(e, variants, ctx.spec, planner_variant(name)))
        t.rows.push_back({name, o.variant, o.variant_kind, format_number(o.mean_d), opt_count(o.sweeps_to_reward),
                          opt_count(o.sweeps_to_error)});
    }
    write_text(path_in(ctx, "planner.csv"), to_csv(t));
    log(ctx) << "planner sweeps written for " << planners.size() << " planner(s)\n";
  }
  return 0;
}

int cmd_correlate(const CommandContext& ctx) {
  const fs::path dir(ctx.out_dir);
  nlohmann::json out = {{"correlations", nlohmann::json::array()}, {"planner", nlohmann::json::array()}};
  if (fs::exists(dir / "runs.csv")) {
    if (!fs::exists(dir / "metrics.csv")) fail(ErrorCode::insufficient_data, "metrics.csv missing; run metrics first");
    const auto metrics = metric_rows_from_csv(parse_csv(read_text((dir / "metrics.csv").string())));
    const auto runs = run_outcomes_from_csv(parse_csv(read_text((dir / "runs.csv").string())));
    std::vector<std::string> algorithms;
    for (const auto& r : runs)
      if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
        algorithms.push_back(r.algorithm);
    for (const auto& a : algorithms) {
      for (NCriterion c : {NCriterion::reward, NCriterion::value_error}) {
        if (c == NCriterion::value_error && a == "reinforce") continue;
        try {
          const auto res = correlate(metrics, runs, a, c);
          out["correlations"].push_back(to_json(res));
          log(ctx) << a << " / " << to_string(c) << ": r = " << format_number(res.mean_r) << " +- "
                   << format_number(res.se_r) << " (" << res.excluded_runs.size() << " excluded)\n";
        } catch (const Error& err) {
          if (err.code() != ErrorCode::insufficient_data) throw;
          out["correlations"].push_back({{"algorithm", a}, {"criterion", to_string(c)}, {"error", err.what()}});
          log(ctx) << a << " / " << to_string(c) << ": " << err.what() << "\n";
        }
      }
    }
  }
  if (fs::exists(dir / "planner.csv")) {
    const CsvTable t = parse_csv(read_text((dir / "planner.csv").string()));
    std::map<std::string, std::vector<PlannerOutcome>> by_planner;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      PlannerOutcome o;
      o.variant = t.cell(i, "variant");
      o.variant_kind = t.cell(i, "kind");
      o.mean_d = t.number(i, "mean_d");
      o.sweeps_to_reward = count_from(t.cell(i, "sweeps_to_reward"));
      o.sweeps_to_error = count_from(t.cell(i, "sweeps_to_error"));
      by_planner[t.cell(i, "planner")].push_back(o);
    }
    for (const auto& [name, outcomes] : by_planner) {
      const auto pc = correlate_planner(outcomes, name);
      out["planner"].push_back(
          {{"planner", name}, {"pearson_r_error", pc.r_error}, {"pearson_r_reward", pc.r_reward}, {"points", pc.points}});
      log(ctx) << name << ": r(sweeps, E[d]) = " << format_number(pc.r_error) << "\n";
    }
  }
  if (out["correlations"].empty() && out["planner"].empty())
    fail(ErrorCode::insufficient_data, "no runs.csv or planner.csv in " + ctx.out_dir);
  write_text(path_in(ctx, "correlation.json"), out.dump(2) + "\n");
  return 0;
}

int cmd_scatter(const CommandContext& ctx, const std::vector<std::string>& experiment_dirs) {
  if (experiment_dirs.empty()) fail(ErrorCode::insufficient_data, "scatter needs at least one experiment directory");
  std::vector<ScatterPoint> points;
  for (const auto& d : experiment_dirs) {
    const fs::path dir(d);
    const auto metrics = metric_rows_from_csv(parse_csv(read_text((dir / "metrics.csv").string())));
    std::vector<RunOutcome> runs;
    if (fs::exists(dir / "runs.csv")) runs = run_outcomes_from_csv(parse_csv(read_text((dir / "runs.csv").string())));
    std::string env_name = dir.filename().string();
    if (fs::exists(dir / "spec.json")) env_name = load_spec((dir / "spec.json").string()).env;
    auto pts = improvement_scatter(env_name, metrics, runs);
    points.insert(points.end(), pts.begin(), pts.end());
  }
  write_text(path_in(ctx, "scatter.csv"), to_csv(to_csv_table(points)));
  write_text(path_in(ctx, "scatter.gp"), gnuplot_script(points, "scatter.csv"));
  nlohmann::json trends = nlohmann::json::object();
  for (const auto& [m, rho] : scatter_trends(points)) {
    trends[m] = std::isnan(rho) ? nlohmann::json(nullptr) : nlohmann::json(rho);
    log(ctx) << m << ": spearman " << format_number(rho) << "\n";
  }
  write_text(path_in(ctx, "scatter.json"), nlohmann::json{{"spearman", trends}}.dump(2) + "\n");
  return 0;
}

int cmd_bounds(const CommandContext& ctx) {
  const auto res = run_bounds_campaign(ctx.spec.bounds);
  write_text(path_in(ctx, "bounds.json"), to_json(res, ctx.spec.bounds).dump(2) + "\n");
  for (const auto& [name, c] : res.counts)
    log(ctx) << name << ": holds " << c.held << ", skipped " << c.skipped << ", violated " << c.violated << "\n";
  const std::size_t v = res.violations();
  if (v > 0) {
    log(ctx) << v << " bound violation(s)\n";
    return 2;
  }
  return 0;
}

int cmd_discover(const CommandContext& ctx, const DiscoverArgs& args) {
  mdl::Corpus corpus;
  if (!args.corpus_path.empty()) {
    std::vector<std::string> alphabet;
    try {
      alphabet = env::build_env(env::env_spec_from_name(ctx.spec.env)).mdp.action_labels();
    } catch (const Error&) {
    }
    corpus = mdl::load_corpus(args.corpus_path, alphabet);
  } else {
    const env::Environment e = build(ctx);
    corpus = mdl::sample_solution_corpus(e.mdp, e.p, args.corpus_size, args.seed);
    mdl::save_corpus(path_in(ctx, "corpus.txt"), corpus);
  }
  const mdl::Objective which = mdl::objective_from_string(args.objective);
  mdl::DiscoverOptions opts;
  opts.max_skills = args.max_skills;
  opts.max_len = args.max_len;
  opts.seed = args.seed;
  opts.jobs = ctx.jobs;
  const auto result = mdl::discover_macroactions(corpus, which, opts);
  const auto j = mdl::to_skills_json(corpus, result, "discovered/" + args.objective, which);
  write_text(path_in(ctx, "discovered.json"), j.dump(2) + "\n");
  log(ctx) << result.macros.size() << " macro(s) discovered under " << args.objective << "\n";
  return 0;
}

}  // namespace dsmdp::experiment
