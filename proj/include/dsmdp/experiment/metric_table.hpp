#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsmdp/env/environment.hpp"
#include "dsmdp/experiment/csv.hpp"
#include "dsmdp/experiment/variants.hpp"
#include "dsmdp/metrics/report.hpp"

namespace dsmdp::experiment {

struct MetricRow {
  std::string variant;
  std::string kind;
  std::string macros;
  std::size_t num_actions = 0;
  double delta = 0.0;
  double entropy_p = 0.0;
  double mean_d = 0.0;
  double j_learn = 0.0;
  double j_explore = 0.0;
  double j_explore_arithmetic = 0.0;
  double density = 0.0;
  std::optional<double> ic_fixed, ic_sup, ic_sup_half, ic_boundary;
  std::optional<double> merged_entropy, ic_merged_sup;
  std::string merged_method;
};

MetricRow metric_row(const Variant& v, const metrics::DifficultyReport& r);

metrics::DifficultyOptions difficulty_options(const ExperimentSpec& spec);

std::vector<MetricRow> compute_metric_table(const env::Environment& env, const std::vector<Variant>& variants,
                                            const ExperimentSpec& spec);

CsvTable to_csv_table(const std::vector<MetricRow>& rows);
std::vector<MetricRow> metric_rows_from_csv(const CsvTable& table);
const MetricRow& find_row(const std::vector<MetricRow>& rows, const std::string& variant);

}  // namespace dsmdp::experiment
