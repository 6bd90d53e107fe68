#pragma once

#include <cmath>
#include <vector>

#include "dsmdp/core/mdp.hpp"

namespace testutil {

using dsmdp::kDead;
using dsmdp::StateId;

// Rows listed per state; the goal row may be empty.
inline dsmdp::TabularDsmdp make_mdp(std::size_t na, StateId goal, const std::vector<std::vector<StateId>>& rows) {
  std::vector<StateId> table;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (s == goal) {
      table.insert(table.end(), na, kDead);
    } else {
      table.insert(table.end(), rows[s].begin(), rows[s].end());
    }
  }
  return dsmdp::TabularDsmdp(rows.size(), na, goal, std::move(table));
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace testutil
