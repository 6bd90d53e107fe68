#include "dsmdp/experiment/scatter.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "dsmdp/core/error.hpp"
#include "dsmdp/experiment/correlate.hpp"

namespace dsmdp::experiment {

namespace {

// Best (lowest) ratio over the non-base entries of `values`.
void add_point(std::vector<ScatterPoint>& out, const std::string& env, const std::string& measure, double ic,
               const std::map<std::string, double>& values, const std::set<std::string>& macro_variants) {
  auto base = values.find("base");
  if (base == values.end() || !(base->second > 0.0)) return;
  ScatterPoint p{env, measure, ic, std::numeric_limits<double>::infinity(), ""};
  for (const auto& [name, v] : values) {
    if (!macro_variants.count(name)) continue;
    const double ratio = v / base->second;
    if (ratio < p.best_ratio) {
      p.best_ratio = ratio;
      p.best_variant = name;
    }
  }
  if (!p.best_variant.empty()) out.push_back(std::move(p));
}

}  // namespace

std::vector<ScatterPoint> improvement_scatter(const std::string& environment, const std::vector<MetricRow>& metrics,
                                              const std::vector<RunOutcome>& runs) {
  const MetricRow& base = find_row(metrics, "base");
  if (!base.ic_sup_half) fail(ErrorCode::insufficient_data, "base row has no incompressibility value");
  std::set<std::string> macro_variants;
  std::map<std::string, double> j_learn, j_explore;
  for (const auto& m : metrics) {
    if (m.kind != "base" && !m.macros.empty()) macro_variants.insert(m.variant);
    j_learn[m.variant] = m.j_learn;
    j_explore[m.variant] = m.j_explore;
  }
  if (macro_variants.empty()) fail(ErrorCode::insufficient_data, "no macroaction variants");
  std::vector<ScatterPoint> out;
  add_point(out, environment, "j_learn", *base.ic_sup_half, j_learn, macro_variants);
  add_point(out, environment, "j_explore", *base.ic_sup_half, j_explore, macro_variants);

  std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> n_sum;
  for (const auto& o : runs) {
    if (!o.n_reward) continue;
    auto& cell = n_sum[o.algorithm][o.variant];
    cell.first += *o.n_reward;
    ++cell.second;
  }
  for (const auto& [algorithm, per_variant] : n_sum) {
    std::map<std::string, double> means;
    for (const auto& [variant, s] : per_variant) means[variant] = s.first / static_cast<double>(s.second);
    add_point(out, environment, "n_" + algorithm, *base.ic_sup_half, means, macro_variants);
  }
  return out;
}

CsvTable to_csv_table(const std::vector<ScatterPoint>& points) {
  CsvTable t;
  t.header = {"environment", "measure", "ic", "best_ratio", "best_variant"};
  for (const auto& p : points)
    t.rows.push_back({p.environment, p.measure, format_number(p.ic), format_number(p.best_ratio), p.best_variant});
  return t;
}

std::string gnuplot_script(const std::vector<ScatterPoint>& points, const std::string& csv_name) {
  std::set<std::string> measures;
  for (const auto& p : points) measures.insert(p.measure);
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 'base incompressibility'\n";
  s += "set ylabel 'min C+ / C0'\n";
  s += "set logscale y\n";
  s += "set terminal pngcairo size 900,600\n";
  for (const auto& m : measures) {
    s += "set output 'scatter_" + m + ".png'\n";
    s += "set title '" + m + "'\n";
    s += "plot '" + csv_name + "' using (strcol(2) eq '" + m +
         "' ? $3 : 1/0):4:1 with labels point pt 7 offset char 1,0 notitle\n";
  }
  return s;
}

std::vector<std::pair<std::string, double>> scatter_trends(const std::vector<ScatterPoint>& points) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_measure;
  for (const auto& p : points) {
    by_measure[p.measure].first.push_back(p.ic);
    by_measure[p.measure].second.push_back(p.best_ratio);
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [m, xy] : by_measure)
    out.emplace_back(m, xy.first.size() >= 3 ? spearman(xy.first, xy.second) : std::nan(""));
  return out;
}

}  // namespace dsmdp::experiment
