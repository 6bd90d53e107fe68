#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsmdp/experiment/spec.hpp"

namespace dsmdp::experiment {

// Shared CLI settings. Every command writes into out_dir and returns the
// process exit code.
struct CommandContext {
  ExperimentSpec spec;
  std::string out_dir = "out";
  unsigned jobs = 1;
  std::ostream* log = nullptr;
};

int cmd_build_env(const CommandContext& ctx);
int cmd_gen_macros(const CommandContext& ctx);
int cmd_metrics(const CommandContext& ctx);
int cmd_run_rl(const CommandContext& ctx);
int cmd_correlate(const CommandContext& ctx);
int cmd_scatter(const CommandContext& ctx, const std::vector<std::string>& experiment_dirs);
int cmd_bounds(const CommandContext& ctx);

struct DiscoverArgs {
  std::string corpus_path;       // empty: sample from the spec's environment
  std::size_t corpus_size = 100;
  std::string objective = "L7";
  std::size_t max_skills = 8;
  std::size_t max_len = 8;
  std::uint64_t seed = 0;
};
int cmd_discover(const CommandContext& ctx, const DiscoverArgs& args);

}  // namespace dsmdp::experiment
