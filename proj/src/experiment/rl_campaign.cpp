#include "dsmdp/experiment/rl_campaign.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/rl/sample_complexity.hpp"

namespace dsmdp::experiment {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string run_id(const std::string& variant, const std::string& algorithm, std::uint64_t seed) {
  std::string v = variant;
  for (char& c : v)
    if (c == '/' || c == ' ') c = '_';
  return v + "__" + algorithm + "__s" + std::to_string(seed);
}

std::optional<double> optional_number(const std::string& s) {
  if (s.empty() || s == "NOT_REACHED") return std::nullopt;
  return parse_number(s);
}

void write_run_file(const std::string& path, const rl::RunRecord& rec, const RunOutcome& o) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path);
  for (const auto& s : rec.samples) {
    nlohmann::json j = {{"env_steps", s.env_steps}, {"test_reward", s.test_reward}};
    j["value_error"] = std::isnan(s.value_error) ? nlohmann::json(nullptr) : nlohmann::json(s.value_error);
    out << j.dump() << '\n';
  }
  nlohmann::json done = {{"run_id", o.run_id},
                         {"converged", rec.converged},
                         {"terminal_env_steps", rec.terminal_env_steps},
                         {"episodes", rec.episodes},
                         {"final_epsilon", rec.final_epsilon}};
  out << done.dump() << '\n';
}

}  // namespace

std::uint64_t derive_job_seed(std::uint64_t seed, std::size_t variant_index, const std::string& algorithm) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(variant_index));
  for (char c : algorithm) h = splitmix64(h ^ static_cast<unsigned char>(c));
  return h;
}

rl::RlConfig campaign_config(const ExperimentSpec& spec, const std::string& algorithm, std::uint64_t job_seed) {
  rl::RlConfig cfg = rl::rl_preset(spec.effective_rl_preset());
  cfg.algorithm = rl::algorithm_from_string(algorithm);
  if (spec.max_env_steps) cfg.max_env_steps = *spec.max_env_steps;
  cfg.seed = job_seed;
  cfg.validate();
  return cfg;
}

std::vector<RunOutcome> run_rl_campaign(const env::Environment& env, const std::vector<Variant>& variants,
                                        const ExperimentSpec& spec, const CampaignOptions& opts) {
  struct Cell {
    std::size_t variant;
    std::string algorithm;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < variants.size(); ++v)
    for (const auto& a : spec.algorithms)
      for (std::uint64_t s : spec.seeds) cells.push_back({v, a, s});
  for (const auto& a : spec.algorithms) rl::algorithm_from_string(a);

  const auto mode = skills::goal_pass_mode_from_string(spec.goal_pass_mode);
  std::vector<rl::RlEnvironment> envs;
  envs.reserve(variants.size());
  for (const Variant& v : variants)
    envs.emplace_back(env.mdp, skills::macros_from_strings(env.mdp, v.macros), env.p, mode,
                      rl::rl_preset(spec.effective_rl_preset()).gamma);

  if (!opts.out_dir.empty()) std::filesystem::create_directories(std::filesystem::path(opts.out_dir) / "runs");

  std::vector<RunOutcome> out(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        const Cell& c = cells[i];
        RunOutcome o;
        o.variant = variants[c.variant].name;
        o.algorithm = c.algorithm;
        o.seed = c.seed;
        o.run_id = run_id(o.variant, o.algorithm, o.seed);
        o.job_seed = derive_job_seed(c.seed, c.variant, c.algorithm);
        const rl::RlConfig cfg = campaign_config(spec, c.algorithm, o.job_seed);
        const rl::RunRecord rec = rl::run(envs[c.variant], cfg);
        o.converged = rec.converged;
        o.terminal_env_steps = rec.terminal_env_steps;
        o.n_reward =
            rl::measure_sample_complexity(rec, {rl::Criterion::reward_at_least, spec.reward_threshold});
        if (cfg.algorithm != rl::Algorithm::reinforce)
          o.n_value_error =
              rl::measure_sample_complexity(rec, {rl::Criterion::value_error_at_most, spec.value_error_threshold});
        if (!opts.out_dir.empty())
          write_run_file((std::filesystem::path(opts.out_dir) / "runs" / (o.run_id + ".jsonl")).string(), rec, o);
        out[i] = std::move(o);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = cells.size();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(cells.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  if (!opts.out_dir.empty()) {
    nlohmann::json manifest = nlohmann::json::object();
    for (const auto& o : out)
      manifest[o.run_id] = {{"env", spec.env},          {"variant", o.variant}, {"algorithm", o.algorithm},
                            {"seed", o.seed},           {"job_seed", o.job_seed},
                            {"rl_preset", spec.effective_rl_preset()}};
    write_text((std::filesystem::path(opts.out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  }
  return out;
}

CsvTable to_csv_table(const std::vector<RunOutcome>& runs) {
  CsvTable t;
  t.header = {"run_id", "variant", "algorithm", "seed", "job_seed", "converged", "terminal_env_steps",
              "n_reward", "n_value_error"};
  auto n = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string("NOT_REACHED"); };
  for (const auto& o : runs)
    t.rows.push_back({o.run_id, o.variant, o.algorithm, std::to_string(o.seed), std::to_string(o.job_seed),
                      o.converged ? "1" : "0", std::to_string(o.terminal_env_steps), n(o.n_reward),
                      n(o.n_value_error)});
  return t;
}

std::vector<RunOutcome> run_outcomes_from_csv(const CsvTable& t) {
  std::vector<RunOutcome> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    RunOutcome o;
    o.run_id = t.cell(i, "run_id");
    o.variant = t.cell(i, "variant");
    o.algorithm = t.cell(i, "algorithm");
    o.seed = std::stoull(t.cell(i, "seed"));
    o.job_seed = std::stoull(t.cell(i, "job_seed"));
    o.converged = t.cell(i, "converged") == "1";
    o.terminal_env_steps = std::stoull(t.cell(i, "terminal_env_steps"));
    o.n_reward = optional_number(t.cell(i, "n_reward"));
    o.n_value_error = optional_number(t.cell(i, "n_value_error"));
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<PlannerOutcome> run_planner_campaign(const env::Environment& env, const std::vector<Variant>& variants,
                                                 const ExperimentSpec& spec, rl::PlannerVariant which) {
  const auto mode = skills::goal_pass_mode_from_string(spec.goal_pass_mode);
  rl::PlannerOptions po;
  po.variant = which;
  po.alpha = spec.planner_alpha;
  po.stop_error = spec.planner_stop_error;
  po.stop_reward = spec.reward_threshold;
  po.horizon = rl::rl_preset(spec.effective_rl_preset()).horizon;
  std::vector<PlannerOutcome> out;
  for (const Variant& v : variants) {
    const auto aug = augment_variant(env.mdp, v, mode);
    PlannerOutcome o;
    o.variant = v.name;
    o.variant_kind = to_string(v.kind);
    o.mean_d = mean_solution_length(env.p, shortest_solution_lengths(aug.table));
    try {
      const rl::PlannerResult r = rl::planner_value_iteration(aug.table, env.p, po);
      o.sweeps_to_reward = r.sweeps_to_reward;
      o.sweeps_to_error = r.sweeps_to_error;
    } catch (const NotConverged&) {
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace dsmdp::experiment
