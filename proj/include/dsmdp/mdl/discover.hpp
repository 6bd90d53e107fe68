#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "dsmdp/mdl/corpus.hpp"
#include "dsmdp/mdl/objectives.hpp"

namespace dsmdp::mdl {

struct DiscoverOptions {
  std::size_t max_skills = 8;
  std::size_t max_len = 8;
  std::size_t min_support = 2;
  std::size_t max_candidates = 2000;  // most frequent n-grams kept per round
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  ObjectiveParams params;
};

struct DiscoverResult {
  std::vector<std::vector<ActionId>> macros;
  // trace[0] is the objective with no macros; trace[i] after adding macros[i-1].
  std::vector<double> trace;
  std::vector<std::size_t> candidates_per_round;
};

// Greedy macro mining over base n-grams (length 2..max_len, occurring at
// least min_support times). Each round keeps the candidate that improves the
// objective the most, strictly; ties go to the earliest in a seeded shuffle.
DiscoverResult discover_macroactions(const Corpus& corpus, Objective which, const DiscoverOptions& opts = {});

// Skills config: {"name": ..., "macros": ["RR", ...]}.
nlohmann::json to_skills_json(const Corpus& corpus, const DiscoverResult& result, const std::string& name,
                              Objective which);

}  // namespace dsmdp::mdl
