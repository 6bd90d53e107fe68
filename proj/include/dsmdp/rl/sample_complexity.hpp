#pragma once

#include <optional>

#include "dsmdp/rl/agents.hpp"

namespace dsmdp::rl {

enum class Criterion { reward_at_least, value_error_at_most };

struct Threshold {
  Criterion criterion = Criterion::reward_at_least;
  double value = 0.95;
};

// Mean env-step count over every crossing into the qualifying region
// (including a first sample already inside it); nullopt if none.
std::optional<double> measure_sample_complexity(const RunRecord& record, const Threshold& threshold);

}  // namespace dsmdp::rl
