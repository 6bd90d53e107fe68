#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsmdp/env/environment.hpp"
#include "dsmdp/experiment/csv.hpp"
#include "dsmdp/experiment/variants.hpp"
#include "dsmdp/rl/agents.hpp"
#include "dsmdp/rl/planner.hpp"

namespace dsmdp::experiment {

struct RunOutcome {
  std::string run_id;
  std::string variant;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint64_t job_seed = 0;
  bool converged = false;
  std::uint64_t terminal_env_steps = 0;
  std::optional<double> n_reward;       // NOT_REACHED when absent
  std::optional<double> n_value_error;  // NOT_REACHED when absent
};

// Independent stream per (seed, variant index, algorithm).
std::uint64_t derive_job_seed(std::uint64_t seed, std::size_t variant_index, const std::string& algorithm);

struct CampaignOptions {
  unsigned jobs = 1;
  std::string out_dir;  // empty: no per-run files
};

// Runs every (variant x algorithm x seed) cell on a bounded worker pool.
// Results come back in cell order regardless of scheduling.
std::vector<RunOutcome> run_rl_campaign(const env::Environment& env, const std::vector<Variant>& variants,
                                        const ExperimentSpec& spec, const CampaignOptions& opts);

rl::RlConfig campaign_config(const ExperimentSpec& spec, const std::string& algorithm, std::uint64_t job_seed);

CsvTable to_csv_table(const std::vector<RunOutcome>& runs);
std::vector<RunOutcome> run_outcomes_from_csv(const CsvTable& table);

struct PlannerOutcome {
  std::string variant;
  std::string variant_kind;
  double mean_d = 0.0;
  std::optional<std::size_t> sweeps_to_reward, sweeps_to_error;
};

// State and Q-value planners on every variant.
std::vector<PlannerOutcome> run_planner_campaign(const env::Environment& env, const std::vector<Variant>& variants,
                                                 const ExperimentSpec& spec, rl::PlannerVariant which);

}  // namespace dsmdp::experiment
