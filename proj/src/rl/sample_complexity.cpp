#include "dsmdp/rl/sample_complexity.hpp"

#include <cmath>

#include "dsmdp/core/error.hpp"

namespace dsmdp::rl {

std::optional<double> measure_sample_complexity(const RunRecord& record, const Threshold& th) {
  if (record.samples.empty()) fail(ErrorCode::insufficient_data, "run record has no samples");
  double total = 0.0;
  std::size_t crossings = 0;
  bool inside = false;
  for (const RunSample& s : record.samples) {
    const double x = th.criterion == Criterion::reward_at_least ? s.test_reward : s.value_error;
    const bool now = th.criterion == Criterion::reward_at_least ? x >= th.value : (!std::isnan(x) && x <= th.value);
    if (now && !inside) {
      total += static_cast<double>(s.env_steps);
      ++crossings;
    }
    inside = now;
  }
  if (crossings == 0) return std::nullopt;
  return total / static_cast<double>(crossings);
}

}  // namespace dsmdp::rl
