#include "dsmdp/experiment/metric_table.hpp"

#include "dsmdp/core/error.hpp"

namespace dsmdp::experiment {

namespace {

std::optional<double> ic_value(const std::optional<metrics::IcValue>& ic) {
  if (!ic) return std::nullopt;
  return ic->value;
}

std::optional<double> optional_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

const std::vector<std::string> kHeader = {
    "variant",      "kind",     "macros",   "num_actions",    "delta",       "entropy_p",
    "mean_d",       "j_learn",  "j_explore", "j_explore_arithmetic", "density", "ic_fixed",
    "ic_sup",       "ic_sup_half", "ic_boundary", "merged_entropy", "ic_merged_sup", "merged_method"};

}  // namespace

MetricRow metric_row(const Variant& v, const metrics::DifficultyReport& r) {
  MetricRow row;
  row.variant = v.name;
  row.kind = to_string(v.kind);
  row.macros = join_macros(v.macros);
  row.num_actions = r.num_actions;
  row.delta = r.delta;
  row.entropy_p = r.entropy_p;
  row.mean_d = r.mean_d;
  row.j_learn = r.j_learn;
  row.j_explore = r.j_explore;
  row.j_explore_arithmetic = r.j_explore_arithmetic;
  row.density = r.density;
  row.ic_fixed = ic_value(r.ic_fixed);
  row.ic_sup = ic_value(r.ic_sup);
  row.ic_sup_half = ic_value(r.ic_sup_half);
  row.ic_boundary = ic_value(r.ic_boundary);
  row.merged_entropy = r.merged_entropy;
  row.ic_merged_sup = ic_value(r.ic_merged_sup);
  row.merged_method = r.merged_method;
  return row;
}

metrics::DifficultyOptions difficulty_options(const ExperimentSpec& spec) {
  metrics::DifficultyOptions o;
  o.delta = spec.effective_delta();
  o.merged = spec.merged_ic;
  return o;
}

std::vector<MetricRow> compute_metric_table(const env::Environment& env, const std::vector<Variant>& variants,
                                            const ExperimentSpec& spec) {
  const auto opts = difficulty_options(spec);
  const auto mode = skills::goal_pass_mode_from_string(spec.goal_pass_mode);
  std::vector<MetricRow> rows;
  for (const Variant& v : variants) {
    const auto aug = augment_variant(env.mdp, v, mode);
    rows.push_back(metric_row(v, metrics::difficulty_report(env.mdp, aug, env.p, opts)));
  }
  return rows;
}

CsvTable to_csv_table(const std::vector<MetricRow>& rows) {
  CsvTable t;
  t.header = kHeader;
  for (const MetricRow& r : rows) {
    t.rows.push_back({r.variant, r.kind, r.macros, std::to_string(r.num_actions), format_number(r.delta),
                      format_number(r.entropy_p), format_number(r.mean_d), format_number(r.j_learn),
                      format_number(r.j_explore), format_number(r.j_explore_arithmetic), format_number(r.density),
                      format_optional(r.ic_fixed), format_optional(r.ic_sup), format_optional(r.ic_sup_half),
                      format_optional(r.ic_boundary), format_optional(r.merged_entropy),
                      format_optional(r.ic_merged_sup), r.merged_method});
  }
  return t;
}

std::vector<MetricRow> metric_rows_from_csv(const CsvTable& t) {
  std::vector<MetricRow> rows;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    MetricRow r;
    r.variant = t.cell(i, "variant");
    r.kind = t.cell(i, "kind");
    r.macros = t.cell(i, "macros");
    r.num_actions = static_cast<std::size_t>(t.number(i, "num_actions"));
    r.delta = t.number(i, "delta");
    r.entropy_p = t.number(i, "entropy_p");
    r.mean_d = t.number(i, "mean_d");
    r.j_learn = t.number(i, "j_learn");
    r.j_explore = t.number(i, "j_explore");
    r.j_explore_arithmetic = t.number(i, "j_explore_arithmetic");
    r.density = t.number(i, "density");
    r.ic_fixed = optional_number(t.cell(i, "ic_fixed"));
    r.ic_sup = optional_number(t.cell(i, "ic_sup"));
    r.ic_sup_half = optional_number(t.cell(i, "ic_sup_half"));
    r.ic_boundary = optional_number(t.cell(i, "ic_boundary"));
    r.merged_entropy = optional_number(t.cell(i, "merged_entropy"));
    r.ic_merged_sup = optional_number(t.cell(i, "ic_merged_sup"));
    r.merged_method = t.cell(i, "merged_method");
    rows.push_back(std::move(r));
  }
  return rows;
}

const MetricRow& find_row(const std::vector<MetricRow>& rows, const std::string& variant) {
  for (const auto& r : rows)
    if (r.variant == variant) return r;
  fail(ErrorCode::insufficient_data, "no metric row for variant '" + variant + "'");
}

}  // namespace dsmdp::experiment
