#include "dsmdp/metrics/solution_counts.hpp"

#include <cmath>
#include <limits>

#include "dsmdp/core/error.hpp"

namespace dsmdp::metrics {

PerLengthCounts per_length_counts(const TabularDsmdp& mdp, std::size_t max_len, std::uint64_t cell_budget) {
  const std::size_t n = mdp.num_states();
  if (static_cast<double>(max_len + 1) * static_cast<double>(n) > static_cast<double>(cell_budget))
    fail(ErrorCode::budget_exceeded, "per-length count table exceeds cell budget");
  PerLengthCounts out;
  out.num_states = n;
  out.max_len = max_len;
  out.exact.assign((max_len + 1) * n, 0);
  out.approx.assign((max_len + 1) * n, 0.0);
  out.exact[mdp.goal()] = 1;
  out.approx[mdp.goal()] = 1.0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t l = 1; l <= max_len; ++l) {
    const std::uint64_t* prev = out.exact.data() + (l - 1) * n;
    const double* prev_f = out.approx.data() + (l - 1) * n;
    std::uint64_t* cur = out.exact.data() + l * n;
    double* cur_f = out.approx.data() + l * n;
    for (StateId s = 0; s < n; ++s) {
      if (mdp.is_goal(s)) continue;
      std::uint64_t acc = 0;
      double acc_f = 0.0;
      for (StateId t : mdp.row(s)) {
        if (t == kDead) continue;
        acc_f += prev_f[t];
        if (acc > kMax - prev[t]) {
          acc = kMax;
          out.saturated = true;
        } else {
          acc += prev[t];
        }
      }
      cur[s] = acc;
      cur_f[s] = acc_f;
    }
  }
  return out;
}

double q_tilde(const PerLengthCounts& counts, std::size_t num_actions, StateId s, std::size_t l) {
  return counts.at_f(s, l) * std::pow(static_cast<double>(num_actions), -static_cast<double>(l));
}

std::vector<double> reconstruct_q(const PerLengthCounts& counts, std::size_t num_actions, StateId goal,
                                  double delta) {
  std::vector<double> q(counts.num_states, 0.0);
  const double ratio = (1.0 - delta) / static_cast<double>(num_actions);
  double w = 1.0;
  for (std::size_t l = 1; l <= counts.max_len; ++l) {
    w *= ratio;
    for (StateId s = 0; s < counts.num_states; ++s) q[s] += counts.at_f(s, l) * w;
  }
  q[goal] = 1.0;
  return q;
}

}  // namespace dsmdp::metrics
