#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"
#include "dsmdp/env/environment.hpp"

namespace dsmdp::env {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void PickupWorldConfig::validate() const {
  if (width == 0 || height == 0) fail(ErrorCode::config_invalid, "pickup grid is empty");
  if (width * height > 256) fail(ErrorCode::config_invalid, "pickup grid larger than 256 cells");
  if (wall.size() != width * height) fail(ErrorCode::config_invalid, "wall mask size mismatch");
  if (objects.size() > 32) fail(ErrorCode::config_invalid, "at most 32 objects supported");
  if (target.empty() || target.size() > 15) fail(ErrorCode::config_invalid, "target must have 1..15 objects");
  std::map<char, int> available;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (o.cell >= wall.size() || wall[o.cell]) fail(ErrorCode::config_invalid, "object placed on a wall");
    for (std::size_t j = 0; j < i; ++j)
      if (objects[j].cell == o.cell) fail(ErrorCode::config_invalid, "two objects share a cell");
    ++available[o.type];
  }
  std::map<char, int> needed;
  for (char t : target) ++needed[t];
  for (const auto& [t, k] : needed)
    if (available[t] < k) fail(ErrorCode::config_invalid, std::string("target needs more objects of type ") + t);
  if (fixed_start && (*fixed_start >= wall.size() || wall[*fixed_start]))
    fail(ErrorCode::config_invalid, "fixed start is not a free cell");
}

PickupWorldConfig parse_pickup_config(std::istream& is) {
  PickupWorldConfig cfg;
  std::vector<std::string> rows;
  bool in_grid = false;
  std::string line;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';') continue;
    if (!in_grid && t.rfind("target:", 0) == 0) {
      std::istringstream ts(t.substr(7));
      std::string tok;
      while (ts >> tok) {
        if (tok.size() != 1 || !std::islower(static_cast<unsigned char>(tok[0])))
          fail(ErrorCode::config_invalid, "target entries must be single lowercase letters");
        cfg.target.push_back(tok[0]);
      }
    } else if (!in_grid && t == "grid:") {
      in_grid = true;
    } else if (in_grid) {
      rows.push_back(t);
    } else {
      fail(ErrorCode::config_invalid, "unrecognized line: " + t);
    }
  }
  if (rows.empty()) fail(ErrorCode::config_invalid, "missing grid");
  cfg.height = rows.size();
  cfg.width = rows[0].size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cfg.width) fail(ErrorCode::config_invalid, "grid rows differ in width");
    for (std::size_t c = 0; c < cfg.width; ++c) {
      const char ch = rows[r][c];
      const std::size_t cell = r * cfg.width + c;
      cfg.wall.push_back(ch == '#');
      if (ch == '#' || ch == '.') continue;
      if (ch == '@') {
        if (cfg.fixed_start) fail(ErrorCode::config_invalid, "more than one '@'");
        cfg.fixed_start = cell;
      } else if (std::islower(static_cast<unsigned char>(ch))) {
        cfg.objects.push_back({cell, ch});
      } else {
        fail(ErrorCode::config_invalid, std::string("unknown grid character '") + ch + "'");
      }
    }
  }
  cfg.validate();
  return cfg;
}

PickupWorldConfig parse_pickup_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_pickup_config(is);
}

PickupWorldConfig load_pickup_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::io_error, "cannot open " + path);
  return parse_pickup_config(is);
}

const std::string& default_pickup_config_text() {
  static const std::string text =
      "; 10x10 room with interior walls; collect an 'a' then a 'b'.\n"
      "target: a b\n"
      "grid:\n"
      "##########\n"
      "#..a...c.#\n"
      "#.##.....#\n"
      "#.#..b.#.#\n"
      "#...#..#.#\n"
      "#.c.#.a..#\n"
      "#.....##.#\n"
      "#.b.#....#\n"
      "#...#..d.#\n"
      "##########\n";
  return text;
}

Environment build_pickup_world(const PickupWorldConfig& cfg, std::size_t state_budget) {
  cfg.validate();
  const std::size_t n_obj = cfg.objects.size();
  const std::uint32_t full_mask = n_obj == 32 ? 0xFFFFFFFFu : ((1u << n_obj) - 1u);
  std::vector<int> object_at(cfg.wall.size(), -1);
  for (std::size_t i = 0; i < n_obj; ++i) object_at[cfg.objects[i].cell] = static_cast<int>(i);

  struct Key {
    std::uint32_t cell, progress, mask;
    bool broken;
  };
  auto encode = [](const Key& k) -> std::uint64_t {
    if (k.broken) return (std::uint64_t{1} << 63) | k.cell;
    return std::uint64_t{k.cell} | (std::uint64_t{k.progress} << 8) | (std::uint64_t{k.mask} << 16);
  };
  constexpr std::uint64_t kGoalKey = std::uint64_t{1} << 62;

  std::unordered_map<std::uint64_t, StateId> index{{kGoalKey, 0}};
  std::vector<Key> keys{{0, 0, 0, false}};
  std::vector<std::string> names{"goal"};
  auto intern = [&](const Key& k) -> StateId {
    auto [it, inserted] = index.emplace(encode(k), static_cast<StateId>(keys.size()));
    if (inserted) {
      if (keys.size() >= state_budget) fail(ErrorCode::state_budget_exceeded, "pickup world exceeds state budget");
      keys.push_back(k);
      std::ostringstream os;
      os << "cell=" << k.cell << (k.broken ? " broken" : "") << " progress=" << k.progress << " mask=" << k.mask;
      names.push_back(os.str());
    }
    return it->second;
  };

  std::vector<StateId> starts;
  for (std::size_t c = 0; c < cfg.wall.size(); ++c) {
    if (cfg.wall[c]) continue;
    if (cfg.fixed_start && *cfg.fixed_start != c) continue;
    starts.push_back(intern({static_cast<std::uint32_t>(c), 0, full_mask, false}));
  }

  const int w = static_cast<int>(cfg.width), h = static_cast<int>(cfg.height);
  constexpr int dr[4] = {-1, 0, 1, 0};
  constexpr int dc[4] = {0, 1, 0, -1};
  std::vector<StateId> table(5, kDead);  // goal row
  for (std::size_t head = 1; head < keys.size(); ++head) {
    const Key k = keys[head];
    const int r = static_cast<int>(k.cell) / w, c = static_cast<int>(k.cell) % w;
    for (int a = 0; a < 4; ++a) {
      const int nr = r + dr[a], nc = c + dc[a];
      Key nk = k;
      if (nr >= 0 && nr < h && nc >= 0 && nc < w && !cfg.wall[static_cast<std::size_t>(nr * w + nc)])
        nk.cell = static_cast<std::uint32_t>(nr * w + nc);
      table.push_back(intern(nk));
    }
    const int obj = object_at[k.cell];
    if (k.broken || obj < 0 || !(k.mask & (1u << obj))) {
      table.push_back(static_cast<StateId>(head));
    } else if (cfg.objects[obj].type != cfg.target[k.progress]) {
      table.push_back(intern({k.cell, 0, 0, true}));
    } else if (k.progress + 1 == cfg.target.size()) {
      table.push_back(0);
    } else {
      table.push_back(intern({k.cell, k.progress + 1, k.mask & ~(1u << obj), false}));
    }
  }

  Environment env;
  env.name = "pickup_world";
  env.mdp = TabularDsmdp(keys.size(), 5, 0, std::move(table), {"U", "R", "D", "L", "P"});
  const SolutionLengthTable d = shortest_solution_lengths(env.mdp);
  std::vector<StateId> solvable_starts;
  for (StateId s : starts)
    if (d.solvable(s)) solvable_starts.push_back(s);
  if (solvable_starts.empty()) fail(ErrorCode::config_invalid, "no start state can complete the target");
  env.p = StateDistribution::uniform(solvable_starts);
  env.state_names = std::move(names);
  return env;
}

}  // namespace dsmdp::env
