#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "dsmdp/experiment/metric_table.hpp"
#include "dsmdp/experiment/rl_campaign.hpp"

namespace dsmdp::experiment {

// NaN when either series is constant or shorter than 2.
double pearson(const std::vector<double>& x, const std::vector<double>& y);
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// ln(lambda * J_learn + (1 - lambda) * exp(J_explore)) via log-sum-exp.
double log_combined_difficulty(double lambda, double j_learn, double j_explore);

struct LambdaFit {
  double lambda = 0.0;
  double r = 0.0;
};
// Maximizes pearson(log_n, log J(lambda)) over [0, 1]: 1001-point grid, then
// golden-section refinement around the best grid point to width 1e-6.
LambdaFit fit_lambda(const std::vector<double>& log_n, const std::vector<double>& j_learn,
                     const std::vector<double>& j_explore);

enum class NCriterion { reward, value_error };
const char* to_string(NCriterion c);
NCriterion n_criterion_from_string(const std::string& s);

struct CorrelationPoint {
  std::string variant;
  std::uint64_t seed = 0;
  double log_n = 0.0;
  double log_j = 0.0;
};

struct SeedCorrelation {
  std::uint64_t seed = 0;
  std::size_t points = 0;
  LambdaFit geometric;
  LambdaFit arithmetic;
};

struct CorrelationResult {
  std::string algorithm;
  NCriterion criterion = NCriterion::reward;
  std::vector<SeedCorrelation> per_seed;
  double mean_r = 0.0, se_r = 0.0;
  double mean_r_arithmetic = 0.0, se_r_arithmetic = 0.0;
  std::vector<std::string> excluded_runs;
  std::vector<CorrelationPoint> points;
};

// One lambda fit per seed over converged runs; seeds with fewer than 3
// points are dropped. Throws insufficient_data when no seed qualifies.
CorrelationResult correlate(const std::vector<MetricRow>& metrics, const std::vector<RunOutcome>& runs,
                            const std::string& algorithm, NCriterion criterion);

nlohmann::json to_json(const CorrelationResult& r);

struct PlannerCorrelation {
  std::string variant;  // "state" or "q"
  double r_error = 0.0;
  double r_reward = 0.0;
  std::size_t points = 0;
};
PlannerCorrelation correlate_planner(const std::vector<PlannerOutcome>& outcomes, const std::string& variant);

}  // namespace dsmdp::experiment
