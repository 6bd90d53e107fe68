#include "dsmdp/skills/rewrite.hpp"

#include <algorithm>
#include <limits>

#include "dsmdp/core/error.hpp"

namespace dsmdp::skills {

std::vector<ActionId> rewrite_min_length(std::span<const ActionId> solution,
                                         const std::vector<std::vector<ActionId>>& macros,
                                         std::size_t num_base_actions) {
  const std::size_t n = solution.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  auto matches = [&](std::size_t pos, const std::vector<ActionId>& m) {
    return pos + m.size() <= n && std::equal(m.begin(), m.end(), solution.begin() + static_cast<std::ptrdiff_t>(pos));
  };
  // best[i]: fewest tokens covering solution[i..n).
  std::vector<std::size_t> best(n + 1, kInf);
  best[n] = 0;
  for (std::size_t i = n; i-- > 0;) {
    best[i] = best[i + 1] + 1;
    for (const auto& m : macros)
      if (!m.empty() && matches(i, m) && best[i + m.size()] + 1 < best[i]) best[i] = best[i + m.size()] + 1;
  }
  std::vector<ActionId> out;
  out.reserve(best[0]);
  for (std::size_t i = 0; i < n;) {
    std::size_t chosen_len = 1;
    ActionId chosen = solution[i];
    if (solution[i] >= num_base_actions) fail(ErrorCode::invalid_argument, "solution contains a non-base action");
    for (std::size_t k = 0; k < macros.size(); ++k) {
      const auto& m = macros[k];
      if (m.empty() || !matches(i, m) || best[i + m.size()] + 1 != best[i]) continue;
      if (m.size() > chosen_len) {
        chosen_len = m.size();
        chosen = static_cast<ActionId>(num_base_actions + k);
      }
    }
    if (chosen_len == 1 && best[i + 1] + 1 != best[i]) fail(ErrorCode::invalid_argument, "rewrite table inconsistent");
    out.push_back(chosen);
    i += chosen_len;
  }
  return out;
}

std::vector<ActionId> expand_rewrite(std::span<const ActionId> rewritten,
                                     const std::vector<std::vector<ActionId>>& macros,
                                     std::size_t num_base_actions) {
  std::vector<ActionId> out;
  for (ActionId a : rewritten) {
    if (a < num_base_actions) {
      out.push_back(a);
    } else {
      const auto& m = macros.at(a - num_base_actions);
      out.insert(out.end(), m.begin(), m.end());
    }
  }
  return out;
}

}  // namespace dsmdp::skills
