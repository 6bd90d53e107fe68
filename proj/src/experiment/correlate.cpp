#include "dsmdp/experiment/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "dsmdp/core/error.hpp"

namespace dsmdp::experiment {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

void mean_se(const std::vector<double>& v, double& mean, double& se) {
  if (v.empty()) {
    mean = se = kNaN;
    return;
  }
  mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() < 2) {
    se = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorCode::invalid_argument, "pearson needs equal-length series");
  const std::size_t n = x.size();
  if (n < 2) return kNaN;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return kNaN;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) { return pearson(ranks(x), ranks(y)); }

double log_combined_difficulty(double lambda, double j_learn, double j_explore) {
  if (lambda <= 0.0) return j_explore;
  if (lambda >= 1.0) return std::log(j_learn);
  const double a = std::log(lambda) + std::log(j_learn);
  const double b = std::log1p(-lambda) + j_explore;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

LambdaFit fit_lambda(const std::vector<double>& log_n, const std::vector<double>& j_learn,
                     const std::vector<double>& j_explore) {
  if (log_n.size() != j_learn.size() || log_n.size() != j_explore.size())
    fail(ErrorCode::invalid_argument, "fit_lambda needs equal-length series");
  std::vector<double> log_j(log_n.size());
  auto r_at = [&](double lambda) {
    for (std::size_t i = 0; i < log_n.size(); ++i) log_j[i] = log_combined_difficulty(lambda, j_learn[i], j_explore[i]);
    const double r = pearson(log_n, log_j);
    return std::isnan(r) ? -std::numeric_limits<double>::infinity() : r;
  };
  constexpr std::size_t kGrid = 1001;
  LambdaFit best{0.0, -std::numeric_limits<double>::infinity()};
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < kGrid; ++i) {
    const double lambda = static_cast<double>(i) / static_cast<double>(kGrid - 1);
    const double r = r_at(lambda);
    if (r > best.r) {
      best = {lambda, r};
      best_i = i;
    }
  }
  if (std::isinf(best.r)) return {0.0, kNaN};
  const double step = 1.0 / static_cast<double>(kGrid - 1);
  double lo = std::max(0.0, static_cast<double>(best_i) * step - step);
  double hi = std::min(1.0, static_cast<double>(best_i) * step + step);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = r_at(x1), f2 = r_at(x2);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = r_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = r_at(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double r_mid = r_at(mid);
  if (r_mid > best.r) best = {mid, r_mid};
  return best;
}

const char* to_string(NCriterion c) { return c == NCriterion::reward ? "reward" : "value_error"; }

NCriterion n_criterion_from_string(const std::string& s) {
  if (s == "reward") return NCriterion::reward;
  if (s == "value_error") return NCriterion::value_error;
  fail(ErrorCode::invalid_argument, "unknown criterion '" + s + "'");
}

CorrelationResult correlate(const std::vector<MetricRow>& metrics, const std::vector<RunOutcome>& runs,
                            const std::string& algorithm, NCriterion criterion) {
  CorrelationResult res;
  res.algorithm = algorithm;
  res.criterion = criterion;
  std::map<std::string, const MetricRow*> by_name;
  for (const auto& m : metrics) by_name[m.variant] = &m;
  std::set<std::uint64_t> seeds;
  for (const auto& o : runs)
    if (o.algorithm == algorithm) seeds.insert(o.seed);

  std::vector<double> rs, rs_arith;
  for (std::uint64_t seed : seeds) {
    std::vector<double> log_n, jl, je, je_arith;
    std::vector<std::string> names;
    for (const auto& o : runs) {
      if (o.algorithm != algorithm || o.seed != seed) continue;
      const auto& n = criterion == NCriterion::reward ? o.n_reward : o.n_value_error;
      if (!n || !(*n > 0.0)) {
        res.excluded_runs.push_back(o.run_id);
        continue;
      }
      auto it = by_name.find(o.variant);
      if (it == by_name.end()) fail(ErrorCode::insufficient_data, "no metric row for variant '" + o.variant + "'");
      log_n.push_back(std::log(*n));
      jl.push_back(it->second->j_learn);
      je.push_back(it->second->j_explore);
      je_arith.push_back(it->second->j_explore_arithmetic);
      names.push_back(o.variant);
    }
    if (log_n.size() < 3) continue;
    SeedCorrelation sc;
    sc.seed = seed;
    sc.points = log_n.size();
    sc.geometric = fit_lambda(log_n, jl, je);
    sc.arithmetic = fit_lambda(log_n, jl, je_arith);
    if (std::isnan(sc.geometric.r)) continue;
    for (std::size_t i = 0; i < log_n.size(); ++i)
      res.points.push_back({names[i], seed, log_n[i], log_combined_difficulty(sc.geometric.lambda, jl[i], je[i])});
    rs.push_back(sc.geometric.r);
    rs_arith.push_back(sc.arithmetic.r);
    res.per_seed.push_back(sc);
  }
  if (res.per_seed.empty())
    fail(ErrorCode::insufficient_data, "fewer than 3 converged runs per seed for " + algorithm);
  mean_se(rs, res.mean_r, res.se_r);
  mean_se(rs_arith, res.mean_r_arithmetic, res.se_r_arithmetic);
  return res;
}

nlohmann::json to_json(const CorrelationResult& r) {
  auto num = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& s : r.per_seed)
    seeds.push_back({{"seed", s.seed},
                     {"points", s.points},
                     {"pearson_r", num(s.geometric.r)},
                     {"lambda_star", s.geometric.lambda},
                     {"pearson_r_arithmetic", num(s.arithmetic.r)},
                     {"lambda_star_arithmetic", s.arithmetic.lambda}});
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.points)
    points.push_back({{"variant", p.variant}, {"seed", p.seed}, {"log_n", p.log_n}, {"log_j", p.log_j}});
  return {{"algorithm", r.algorithm},
          {"criterion", to_string(r.criterion)},
          {"pearson_r_mean", num(r.mean_r)},
          {"pearson_r_se", num(r.se_r)},
          {"pearson_r_arithmetic_mean", num(r.mean_r_arithmetic)},
          {"pearson_r_arithmetic_se", num(r.se_r_arithmetic)},
          {"per_seed", seeds},
          {"excluded_runs", r.excluded_runs},
          {"points", points}};
}

PlannerCorrelation correlate_planner(const std::vector<PlannerOutcome>& outcomes, const std::string& variant) {
  PlannerCorrelation pc;
  pc.variant = variant;
  std::vector<double> n_err, d_err, n_rew, d_rew;
  for (const auto& o : outcomes) {
    if (o.sweeps_to_error) {
      n_err.push_back(static_cast<double>(*o.sweeps_to_error));
      d_err.push_back(o.mean_d);
    }
    if (o.sweeps_to_reward) {
      n_rew.push_back(static_cast<double>(*o.sweeps_to_reward));
      d_rew.push_back(o.mean_d);
    }
  }
  if (n_err.size() < 3) fail(ErrorCode::insufficient_data, "fewer than 3 converged planner runs");
  pc.points = n_err.size();
  pc.r_error = pearson(n_err, d_err);
  pc.r_reward = n_rew.size() >= 3 ? pearson(n_rew, d_rew) : kNaN;
  return pc;
}

}  // namespace dsmdp::experiment
