#include "dsmdp/core/io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "dsmdp/core/error.hpp"

namespace dsmdp {

namespace {

constexpr std::array<char, 8> kMagic{'D', 'S', 'M', 'D', 'P', 'T', 'A', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) fail(ErrorCode::io_error, "truncated binary MDP");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_binary(std::ostream& os, const TabularDsmdp& mdp) {
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(mdp.num_states()));
  put_u32(os, static_cast<std::uint32_t>(mdp.num_actions()));
  put_u32(os, mdp.goal());
  put_u32(os, static_cast<std::uint32_t>(mdp.base_action_count()));
  for (StateId t : mdp.table()) put_u32(os, t);
  put_u32(os, static_cast<std::uint32_t>(mdp.action_labels().size()));
  for (const std::string& label : mdp.action_labels()) {
    put_u32(os, static_cast<std::uint32_t>(label.size()));
    os.write(label.data(), static_cast<std::streamsize>(label.size()));
  }
  if (!os) fail(ErrorCode::io_error, "failed writing binary MDP");
}

TabularDsmdp read_binary(std::istream& is) {
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) fail(ErrorCode::io_error, "bad binary MDP magic");
  if (get_u32(is) != kVersion) fail(ErrorCode::io_error, "unsupported binary MDP version");
  const std::uint32_t n = get_u32(is);
  const std::uint32_t na = get_u32(is);
  const std::uint32_t goal = get_u32(is);
  const std::uint32_t base = get_u32(is);
  std::vector<StateId> table(static_cast<std::size_t>(n) * na);
  for (StateId& t : table) t = get_u32(is);
  std::vector<std::string> labels(get_u32(is));
  for (std::string& label : labels) {
    label.resize(get_u32(is));
    if (!is.read(label.data(), static_cast<std::streamsize>(label.size()))) fail(ErrorCode::io_error, "truncated label");
  }
  return TabularDsmdp(n, na, goal, std::move(table), std::move(labels), base);
}

void save_binary(const std::string& path, const TabularDsmdp& mdp) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::io_error, "cannot open " + path);
  write_binary(os, mdp);
}

TabularDsmdp load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::io_error, "cannot open " + path);
  return read_binary(is);
}

nlohmann::json to_json(const TabularDsmdp& mdp) {
  return {{"num_states", mdp.num_states()},
          {"num_actions", mdp.num_actions()},
          {"goal", mdp.goal()},
          {"base_action_count", mdp.base_action_count()},
          {"action_labels", mdp.action_labels()},
          {"successor", std::vector<StateId>(mdp.table().begin(), mdp.table().end())}};
}

TabularDsmdp mdp_from_json(const nlohmann::json& j) {
  try {
    return TabularDsmdp(j.at("num_states").get<std::size_t>(), j.at("num_actions").get<std::size_t>(),
                        j.at("goal").get<StateId>(), j.at("successor").get<std::vector<StateId>>(),
                        j.value("action_labels", std::vector<std::string>{}),
                        j.value("base_action_count", std::size_t{0}));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::io_error, std::string("malformed MDP json: ") + e.what());
  }
}

nlohmann::json to_json(const StateDistribution& p) {
  return {{"states", std::vector<StateId>(p.states().begin(), p.states().end())},
          {"probs", std::vector<double>(p.probs().begin(), p.probs().end())}};
}

StateDistribution distribution_from_json(const nlohmann::json& j) {
  const auto states = j.at("states").get<std::vector<StateId>>();
  const auto probs = j.at("probs").get<std::vector<double>>();
  if (states.size() != probs.size()) fail(ErrorCode::io_error, "distribution arrays differ in length");
  std::vector<std::pair<StateId, double>> w;
  for (std::size_t i = 0; i < states.size(); ++i) w.emplace_back(states[i], probs[i]);
  return StateDistribution::from_weights(std::move(w));
}

}  // namespace dsmdp
