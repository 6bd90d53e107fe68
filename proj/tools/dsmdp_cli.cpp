// Command-line driver for the experiment pipeline.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsmdp/core/error.hpp"
#include "dsmdp/experiment/commands.hpp"

using namespace dsmdp;
using namespace dsmdp::experiment;

namespace {

struct Common {
  std::string spec_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string preset;
  std::string rl_preset;
  std::vector<std::string> algorithms;
  std::optional<std::uint64_t> max_env_steps;
  std::optional<double> delta;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--spec", c.spec_path, "Experiment spec (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base seed (RL seeds become seed, seed+1, ...)");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--preset", c.preset, "Environment preset, e.g. cliff_walking, 8puzzle, pocket_cube, chain:30");
}

CommandContext context(const Common& c) {
  CommandContext ctx;
  if (!c.spec_path.empty()) ctx.spec = load_spec(c.spec_path);
  if (!c.preset.empty()) ctx.spec.env = c.preset;
  if (!c.rl_preset.empty()) ctx.spec.rl_preset = c.rl_preset;
  if (!c.algorithms.empty()) ctx.spec.algorithms = c.algorithms;
  if (c.max_env_steps) ctx.spec.max_env_steps = c.max_env_steps;
  if (c.delta) ctx.spec.delta = c.delta;
  if (c.seed) {
    for (std::size_t i = 0; i < ctx.spec.seeds.size(); ++i) ctx.spec.seeds[i] = *c.seed + i;
    ctx.spec.bounds.seed = *c.seed;
  }
  ctx.out_dir = c.out_dir;
  ctx.jobs = c.jobs;
  ctx.log = &std::cerr;
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difficulty, incompressibility and skill experiments on deterministic sparse-reward MDPs"};
  app.require_subcommand(1);
  Common c;
  std::vector<std::string> scatter_dirs;
  DiscoverArgs disc;

  auto* build_env = app.add_subcommand("build-env", "Build an environment and write its table");
  auto* gen_macros = app.add_subcommand("gen-macros", "List the macroaction variants of an experiment");
  auto* metrics = app.add_subcommand("metrics", "Difficulty and incompressibility table over variants");
  auto* run_rl = app.add_subcommand("run-rl", "RL and planner campaign over variants and seeds");
  auto* correlate = app.add_subcommand("correlate", "Lambda-optimized correlations for an experiment directory");
  auto* scatter = app.add_subcommand("scatter", "Incompressibility vs best improvement ratio");
  auto* bounds = app.add_subcommand("bounds", "Randomized bound campaign");
  auto* discover = app.add_subcommand("discover", "Greedy macroaction discovery under a description-length objective");
  for (auto* cmd : {build_env, gen_macros, metrics, run_rl, correlate, scatter, bounds, discover}) add_common(cmd, c);

  metrics->add_option("--delta", c.delta, "Termination probability (default 1/horizon)");
  run_rl->add_option("--algorithms", c.algorithms,
                     "q_learning, rl_value_iteration, reinforce, planner_state, planner_q");
  run_rl->add_option("--rl-preset", c.rl_preset, "RL hyperparameter preset");
  run_rl->add_option("--max-env-steps", c.max_env_steps, "Environment-step budget per run");
  scatter->add_option("--in", scatter_dirs, "Experiment directories (metrics.csv, optional runs.csv)")->required();
  discover->add_option("--corpus", disc.corpus_path, "Corpus file, one label sequence per line")
      ->check(CLI::ExistingFile);
  discover->add_option("--corpus-size", disc.corpus_size, "Sampled solutions when no corpus file is given")
      ->capture_default_str();
  discover->add_option("--objective", disc.objective, "L1 L2 L3 L4 L5 J6 L7")->capture_default_str();
  discover->add_option("--max-skills", disc.max_skills)->capture_default_str();
  discover->add_option("--max-len", disc.max_len)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const CommandContext ctx = context(c);
    if (*build_env) return cmd_build_env(ctx);
    if (*gen_macros) return cmd_gen_macros(ctx);
    if (*metrics) return cmd_metrics(ctx);
    if (*run_rl) return cmd_run_rl(ctx);
    if (*correlate) return cmd_correlate(ctx);
    if (*scatter) return cmd_scatter(ctx, scatter_dirs);
    if (*bounds) return cmd_bounds(ctx);
    if (*discover) {
      if (c.seed) disc.seed = *c.seed;
      return cmd_discover(ctx, disc);
    }
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
