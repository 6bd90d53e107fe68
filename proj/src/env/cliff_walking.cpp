#include <array>
#include <string>

#include "dsmdp/core/error.hpp"
#include "dsmdp/env/environment.hpp"

namespace dsmdp::env {

namespace {

constexpr int kRows = 4;
constexpr int kCols = 12;
constexpr int kStartRow = 3, kStartCol = 0;
constexpr int kGoalRow = 3, kGoalCol = 11;

bool is_cliff(int r, int c) { return r == 3 && c >= 1 && c <= 10; }

std::array<int, kRows * kCols> cell_ids() {
  std::array<int, kRows * kCols> id{};
  int next = 0;
  for (int r = 0; r < kRows; ++r)
    for (int c = 0; c < kCols; ++c) id[r * kCols + c] = is_cliff(r, c) ? -1 : next++;
  return id;
}

}  // namespace

Environment build_cliff_walking() {
  const auto id = cell_ids();
  const int num_states = kRows * kCols - 10;
  constexpr int dr[4] = {-1, 0, 1, 0};
  constexpr int dc[4] = {0, 1, 0, -1};
  std::vector<StateId> table(static_cast<std::size_t>(num_states) * 4);
  std::vector<std::string> names(num_states);
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const int s = id[r * kCols + c];
      if (s < 0) continue;
      names[s] = std::to_string(r) + "," + std::to_string(c);
      for (int a = 0; a < 4; ++a) {
        int nr = r + dr[a], nc = c + dc[a];
        if (nr < 0 || nr >= kRows || nc < 0 || nc >= kCols) {
          nr = r;
          nc = c;
        } else if (is_cliff(nr, nc)) {
          nr = kStartRow;
          nc = kStartCol;
        }
        table[static_cast<std::size_t>(s) * 4 + a] = static_cast<StateId>(id[nr * kCols + nc]);
      }
    }
  }
  Environment env;
  env.name = "cliff_walking";
  env.mdp = TabularDsmdp(num_states, 4, static_cast<StateId>(id[kGoalRow * kCols + kGoalCol]), std::move(table),
                         {"U", "R", "D", "L"});
  env.p = StateDistribution::point_mass(static_cast<StateId>(id[kStartRow * kCols + kStartCol]));
  env.state_names = std::move(names);
  return env;
}

StateId cliff_state(const Environment& env, unsigned row, unsigned col) {
  const std::string name = std::to_string(row) + "," + std::to_string(col);
  for (std::size_t s = 0; s < env.state_names.size(); ++s)
    if (env.state_names[s] == name) return static_cast<StateId>(s);
  fail(ErrorCode::invalid_argument, "no cliff-walking state at " + name);
}

}  // namespace dsmdp::env
