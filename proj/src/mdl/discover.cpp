#include "dsmdp/mdl/discover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <thread>

#include "dsmdp/core/error.hpp"

namespace dsmdp::mdl {

namespace {

using Gram = std::vector<ActionId>;

std::vector<Gram> candidate_grams(const Corpus& corpus, const std::vector<Gram>& chosen, const DiscoverOptions& opts) {
  std::map<Gram, std::size_t> counts;
  for (const auto& s : corpus.solutions)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t len = 2; len <= opts.max_len && i + len <= s.size(); ++len)
        ++counts[Gram(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + len))];
  std::vector<std::pair<Gram, std::size_t>> kept;
  for (auto& [g, c] : counts)
    if (c >= opts.min_support && std::find(chosen.begin(), chosen.end(), g) == chosen.end()) kept.emplace_back(g, c);
  // Most tokens saved first; map order breaks ties.
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second * (a.first.size() - 1) > b.second * (b.first.size() - 1);
  });
  if (kept.size() > opts.max_candidates) kept.resize(opts.max_candidates);
  std::vector<Gram> out;
  out.reserve(kept.size());
  for (auto& [g, c] : kept) out.push_back(std::move(g));
  return out;
}

// Lower is better.
double score(const Corpus& corpus, const std::vector<Gram>& macros, Objective which, const ObjectiveParams& params) {
  const double v = objective(abstract_corpus(corpus, macros), which, params);
  return is_maximized(which) ? -v : v;
}

}  // namespace

DiscoverResult discover_macroactions(const Corpus& corpus, Objective which, const DiscoverOptions& opts) {
  corpus.validate();
  if (opts.max_len < 2) fail(ErrorCode::invalid_argument, "max_len must be at least 2");
  DiscoverResult result;
  std::mt19937_64 rng(opts.seed);
  double current = score(corpus, {}, which, opts.params);
  result.trace.push_back(is_maximized(which) ? -current : current);

  while (result.macros.size() < opts.max_skills) {
    auto candidates = candidate_grams(corpus, result.macros, opts);
    result.candidates_per_round.push_back(candidates.size());
    if (candidates.empty()) break;
    std::shuffle(candidates.begin(), candidates.end(), rng);

    std::vector<double> scores(candidates.size(), std::numeric_limits<double>::quiet_NaN());
    auto evaluate = [&](std::size_t worker, std::size_t stride) {
      std::vector<Gram> trial = result.macros;
      trial.emplace_back();
      for (std::size_t i = worker; i < candidates.size(); i += stride) {
        trial.back() = candidates[i];
        try {
          scores[i] = score(corpus, trial, which, opts.params);
        } catch (const Error&) {
          // Objective undefined for this candidate; it cannot be chosen.
        }
      }
    };
    const std::size_t workers = std::clamp<std::size_t>(opts.jobs, 1, candidates.size());
    if (workers == 1) {
      evaluate(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(evaluate, w, workers);
      for (auto& t : pool) t.join();
    }

    std::size_t best = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (!std::isnan(scores[i]) && (best == candidates.size() || scores[i] < scores[best])) best = i;
    const double tol = 1e-12 * std::max(1.0, std::abs(current));
    if (best == candidates.size() || !(scores[best] < current - tol)) break;
    current = scores[best];
    result.macros.push_back(candidates[best]);
    result.trace.push_back(is_maximized(which) ? -current : current);
  }
  return result;
}

nlohmann::json to_skills_json(const Corpus& corpus, const DiscoverResult& result, const std::string& name,
                              Objective which) {
  nlohmann::json macros = nlohmann::json::array();
  for (const auto& m : result.macros) macros.push_back(format_sequence(corpus, m));
  return {{"name", name},
          {"macros", macros},
          {"objective", to_string(which)},
          {"trace", result.trace},
          {"alphabet", corpus.alphabet}};
}

}  // namespace dsmdp::mdl
