#pragma once

#include <cstdint>
#include <vector>

#include "dsmdp/core/mdp.hpp"

namespace dsmdp::metrics {

// counts(s, l): number of length-l action sequences solving s, l in 0..max_len.
// Stored layer-major. Exact counts saturate at UINT64_MAX (flagged); the
// double view keeps going.
struct PerLengthCounts {
  std::size_t num_states = 0;
  std::size_t max_len = 0;
  std::vector<std::uint64_t> exact;
  std::vector<double> approx;
  bool saturated = false;

  std::uint64_t at(StateId s, std::size_t l) const noexcept { return exact[l * num_states + s]; }
  double at_f(StateId s, std::size_t l) const noexcept { return approx[l * num_states + s]; }
};

// Throws budget_exceeded when (max_len + 1) * num_states exceeds cell_budget.
PerLengthCounts per_length_counts(const TabularDsmdp& mdp, std::size_t max_len,
                                  std::uint64_t cell_budget = 200'000'000);

// q~(s, l) = counts(s, l) * |A|^-l.
double q_tilde(const PerLengthCounts& counts, std::size_t num_actions, StateId s, std::size_t l);

// sum_l counts(s, l) ((1 - delta) / |A|)^l for every state; goal gets 1.
std::vector<double> reconstruct_q(const PerLengthCounts& counts, std::size_t num_actions, StateId goal,
                                  double delta);

}  // namespace dsmdp::metrics
