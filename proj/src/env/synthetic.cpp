#include <cmath>
#include <string>

#include "dsmdp/core/error.hpp"
#include "dsmdp/env/environment.hpp"

namespace dsmdp::env {

Environment build_chain(unsigned n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "chain needs n >= 1");
  std::vector<StateId> table(n + 1, kDead);
  for (unsigned s = 1; s <= n; ++s) table[s] = s - 1;
  Environment env;
  env.name = "chain" + std::to_string(n);
  env.mdp = TabularDsmdp(n + 1, 1, 0, std::move(table), {"a"});
  env.p = StateDistribution::point_mass(n);
  for (unsigned s = 0; s <= n; ++s) env.state_names.push_back(std::to_string(s));
  return env;
}

MoveTable chain_moves(unsigned n) {
  MoveTable mt;
  mt.num_states = n + 1;
  mt.num_moves = 1;
  mt.labels = {"away"};
  for (unsigned s = 0; s <= n; ++s) mt.next.push_back(s < n ? s + 1 : kDead);
  return mt;
}

Environment build_sequence_consume(unsigned alphabet, unsigned max_len, const std::vector<double>& length_weights) {
  if (alphabet < 1 || alphabet > 26) fail(ErrorCode::invalid_argument, "alphabet must have 1..26 symbols");
  if (max_len < 1) fail(ErrorCode::invalid_argument, "max_len must be >= 1");
  if (!length_weights.empty() && length_weights.size() != max_len)
    fail(ErrorCode::invalid_argument, "need one weight per length class");
  // offset[l] is the id of the first string of length l (ids 1..).
  std::vector<std::uint64_t> offset(max_len + 2, 1), count(max_len + 1, 1);
  for (unsigned l = 1; l <= max_len; ++l) {
    count[l] = count[l - 1] * alphabet;
    offset[l + 1] = offset[l] + count[l];
    if (offset[l + 1] >= kDead) fail(ErrorCode::state_budget_exceeded, "sequence_consume too large");
  }
  const std::uint64_t n = offset[max_len + 1];
  std::vector<StateId> table(n * alphabet, kDead);
  std::vector<std::string> labels;
  for (unsigned x = 0; x < alphabet; ++x) labels.emplace_back(1, static_cast<char>('a' + x));
  std::vector<std::pair<StateId, double>> weights;
  Environment env;
  if (n <= 100'000) env.state_names.push_back("goal");
  for (unsigned l = 1; l <= max_len; ++l) {
    const double w = length_weights.empty() ? 1.0 : length_weights[l - 1];
    if (!(w >= 0.0)) fail(ErrorCode::invalid_argument, "length weights must be non-negative");
    const std::uint64_t high = count[l - 1];  // place value of the first symbol
    for (std::uint64_t v = 0; v < count[l]; ++v) {
      const std::uint64_t s = offset[l] + v;
      const std::uint64_t first = v / high;
      table[s * alphabet + first] = l == 1 ? 0 : static_cast<StateId>(offset[l - 1] + v % high);
      if (w > 0.0) weights.emplace_back(static_cast<StateId>(s), w / static_cast<double>(count[l]));
      if (n <= 100'000) {
        std::string name(l, 'a');
        std::uint64_t rest = v;
        for (unsigned i = l; i-- > 0;) {
          name[i] = static_cast<char>('a' + rest % alphabet);
          rest /= alphabet;
        }
        env.state_names.push_back(std::move(name));
      }
    }
  }
  env.name = "seqconsume" + std::to_string(alphabet) + "x" + std::to_string(max_len);
  env.mdp = TabularDsmdp(n, alphabet, 0, std::move(table), std::move(labels));
  env.p = StateDistribution::from_weights(std::move(weights));
  return env;
}

}  // namespace dsmdp::env
