#include <sstream>

#include "dsmdp/core/error.hpp"
#include "dsmdp/env/environment.hpp"

namespace dsmdp::env {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

unsigned to_unsigned(const std::string& s, const std::string& name) {
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    fail(ErrorCode::config_invalid, "bad number in environment name " + name);
  }
}

}  // namespace

EnvSpec env_spec_from_name(const std::string& name) {
  EnvSpec spec;
  const auto parts = split(name, ':');
  const std::string head = parts.empty() ? std::string() : parts[0];
  if (head == "cliff_walking" && parts.size() == 1) {
    spec.kind = EnvKind::cliff_walking;
  } else if ((head == "8puzzle" || head == "8puzzle_death") && parts.size() == 1) {
    spec.kind = EnvKind::n_puzzle;
    spec.n = 3;
    spec.vacuous = head == "8puzzle" ? VacuousMode::noop : VacuousMode::death;
  } else if ((head == "3puzzle" || head == "3puzzle_death") && parts.size() == 1) {
    spec.kind = EnvKind::n_puzzle;
    spec.n = 2;
    spec.vacuous = head == "3puzzle" ? VacuousMode::noop : VacuousMode::death;
  } else if (head == "pocket_cube" && parts.size() == 1) {
    spec.kind = EnvKind::pocket_cube;
  } else if (head == "pickup" && parts.size() == 1) {
    spec.kind = EnvKind::pickup_world;
  } else if (head == "chain" && parts.size() == 2) {
    spec.kind = EnvKind::chain;
    spec.n = to_unsigned(parts[1], name);
  } else if (head == "seqconsume" && parts.size() == 3) {
    spec.kind = EnvKind::sequence_consume;
    spec.alphabet = to_unsigned(parts[1], name);
    spec.max_len = to_unsigned(parts[2], name);
  } else {
    fail(ErrorCode::config_invalid, "unknown environment '" + name + "'");
  }
  return spec;
}

std::string env_name(const EnvSpec& spec) {
  switch (spec.kind) {
    case EnvKind::cliff_walking: return "cliff_walking";
    case EnvKind::n_puzzle:
      return std::string(spec.n == 3 ? "8puzzle" : "3puzzle") + (spec.vacuous == VacuousMode::death ? "_death" : "");
    case EnvKind::pocket_cube: return "pocket_cube";
    case EnvKind::pickup_world: return "pickup";
    case EnvKind::chain: return "chain:" + std::to_string(spec.n);
    case EnvKind::sequence_consume:
      return "seqconsume:" + std::to_string(spec.alphabet) + ":" + std::to_string(spec.max_len);
  }
  return "unknown";
}

Environment build_env(const EnvSpec& spec) {
  switch (spec.kind) {
    case EnvKind::cliff_walking: return build_cliff_walking();
    case EnvKind::n_puzzle: return build_n_puzzle(spec.n, spec.vacuous, spec.k_max);
    case EnvKind::pocket_cube: return build_pocket_cube(spec.k_max == 0 ? 11 : spec.k_max);
    case EnvKind::pickup_world:
      return build_pickup_world(spec.pickup ? *spec.pickup : parse_pickup_config_string(default_pickup_config_text()),
                                spec.state_budget);
    case EnvKind::chain: return build_chain(spec.n);
    case EnvKind::sequence_consume: return build_sequence_consume(spec.alphabet, spec.max_len, spec.length_weights);
  }
  fail(ErrorCode::config_invalid, "unknown environment kind");
}

}  // namespace dsmdp::env
