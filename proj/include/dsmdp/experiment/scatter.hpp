#pragma once

#include <string>
#include <vector>

#include "dsmdp/experiment/csv.hpp"
#include "dsmdp/experiment/metric_table.hpp"
#include "dsmdp/experiment/rl_campaign.hpp"

namespace dsmdp::experiment {

struct ScatterPoint {
  std::string environment;
  std::string measure;  // j_learn, j_explore or n_<algorithm>
  double ic = 0.0;      // base incompressibility, sup over epsilon in (0, 1/2]
  double best_ratio = 0.0;  // min over macro variants of C+ / C0
  std::string best_variant;
};

// One point per measure available for this environment. N uses the mean
// over reached seeds; variants without any reached seed are skipped.
std::vector<ScatterPoint> improvement_scatter(const std::string& environment, const std::vector<MetricRow>& metrics,
                                              const std::vector<RunOutcome>& runs);

CsvTable to_csv_table(const std::vector<ScatterPoint>& points);
// gnuplot script plotting every measure from `csv_name`.
std::string gnuplot_script(const std::vector<ScatterPoint>& points, const std::string& csv_name);
// Spearman correlation of (ic, best_ratio) per measure, NaN below 3 points.
std::vector<std::pair<std::string, double>> scatter_trends(const std::vector<ScatterPoint>& points);

}  // namespace dsmdp::experiment
