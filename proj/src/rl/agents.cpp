#include "dsmdp/rl/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsmdp/core/error.hpp"

namespace dsmdp::rl {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::q_learning: return "q_learning";
    case Algorithm::rl_value_iteration: return "rl_value_iteration";
    case Algorithm::reinforce: return "reinforce";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "q_learning" || s == "qlearning") return Algorithm::q_learning;
  if (s == "rl_value_iteration" || s == "value_iteration" || s == "vi") return Algorithm::rl_value_iteration;
  if (s == "reinforce") return Algorithm::reinforce;
  fail(ErrorCode::config_invalid, "unknown algorithm: " + s);
}

void RlConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::config_invalid, "alpha must lie in (0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail(ErrorCode::config_invalid, "gamma must lie in (0, 1]");
  if (horizon == 0 || base_action_budget == 0) fail(ErrorCode::config_invalid, "horizon and budget must be positive");
  if (replay_size == 0 || update_every == 0 || batch == 0) fail(ErrorCode::config_invalid, "replay settings must be positive");
  if (eval_episodes == 0) fail(ErrorCode::config_invalid, "eval_episodes must be positive");
  if (epsilon_floor < 0.0 || epsilon_start < epsilon_floor || epsilon_start > 1.0)
    fail(ErrorCode::config_invalid, "epsilon schedule must satisfy 0 <= floor <= start <= 1");
}

RlConfig rl_preset(const std::string& name) {
  RlConfig c;
  if (name == "default") return c;
  if (name == "cliff_walking" || name == "chain") {
    c.eval_episodes = 1;
    c.eval_every = 0;
    return c;
  }
  if (name == "pickup" || name == "8puzzle") return c;
  if (name == "pocket_cube") {
    c.stop_reward = 0.75;
    c.stop_value_error = 0.1;
    return c;
  }
  fail(ErrorCode::config_invalid, "unknown RL preset: " + name);
}

namespace {

struct StepOutcome {
  StateId next = kDead;
  double reward = 0.0;
  bool done = false;  // goal or dead sink
  bool cut = false;   // the action would overrun the base-action budget
};

StepOutcome step(const RlEnvironment& env, StateId s, ActionId a, std::size_t& used, std::size_t budget) {
  StepOutcome out;
  const std::uint32_t c = env.cost(s, a);
  if (used + c > budget) {
    out.cut = true;
    return out;
  }
  used += c;
  out.next = env.next(s, a);
  if (out.next == kDead) {
    out.done = true;
  } else if (out.next == env.goal()) {
    out.done = true;
    out.reward = 1.0;
  }
  return out;
}

std::size_t argmax_row(const double* row, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < n; ++a)
    if (row[a] > row[best]) best = a;
  return best;
}

// Runs one episode under `policy`; returns gamma^(steps-1) on success, else 0.
template <class Policy>
double rollout_reward(const RlEnvironment& env, StateId s, Policy&& policy, std::size_t horizon, std::size_t budget) {
  std::size_t used = 0;
  double discount = 1.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const StepOutcome o = step(env, s, policy(s), used, budget);
    if (o.cut) return 0.0;
    if (o.done) return o.reward * discount;
    s = o.next;
    discount *= env.gamma();
    if (used >= budget) return 0.0;
  }
  return 0.0;
}

class Harness {
 public:
  Harness(const RlEnvironment& env, const RlConfig& cfg)
      : env_(env), cfg_(cfg), rng_(cfg.seed), eval_rng_(cfg.seed ^ 0x9E3779B97F4A7C15ULL), eps_(cfg.epsilon_start),
        next_eval_(cfg.eval_every) {}

  bool explore() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < eps_; }
  ActionId random_action() {
    return static_cast<ActionId>(std::uniform_int_distribution<std::size_t>(0, env_.num_actions() - 1)(rng_));
  }

  // Called after each update; returns true when early stopping triggers.
  template <class Evaluate>
  bool after_update(Evaluate&& evaluate, bool use_value_error) {
    if (cfg_.eval_every != 0 && steps < next_eval_) return false;
    while (cfg_.eval_every != 0 && next_eval_ <= steps) next_eval_ += cfg_.eval_every;
    if (!record.samples.empty() && record.samples.back().env_steps >= steps) return false;
    const RunSample sample = evaluate();
    record.samples.push_back(sample);
    while (sample.test_reward >= static_cast<double>(triggers_ + 1) * cfg_.reward_trigger - 1e-12 &&
           eps_ > cfg_.epsilon_floor) {
      ++triggers_;
      eps_ = std::max(cfg_.epsilon_floor, eps_ - cfg_.epsilon_step);
    }
    const bool reward_ok = sample.test_reward >= cfg_.stop_reward;
    const bool error_ok = !use_value_error || sample.value_error <= cfg_.stop_value_error;
    return reward_ok && error_ok;
  }

  RunRecord finish(bool converged) {
    record.converged = converged;
    record.terminal_env_steps = steps;
    record.episodes = episodes;
    record.final_epsilon = eps_;
    return std::move(record);
  }

  StateId eval_start() { return env_.sample_start(eval_rng_); }
  Rng& rng() { return rng_; }
  Rng& eval_rng() { return eval_rng_; }

  std::uint64_t steps = 0;
  std::uint64_t episodes = 0;
  RunRecord record;

 private:
  const RlEnvironment& env_;
  const RlConfig& cfg_;
  Rng rng_;
  Rng eval_rng_;
  double eps_;
  std::uint64_t triggers_ = 0;
  std::uint64_t next_eval_;
};

double mean_eval(Harness& h, const RlEnvironment& env, const RlConfig& cfg, auto&& policy) {
  double total = 0.0;
  for (std::size_t e = 0; e < cfg.eval_episodes; ++e)
    total += rollout_reward(env, h.eval_start(), policy, cfg.horizon, cfg.base_action_budget);
  return total / static_cast<double>(cfg.eval_episodes);
}

struct Transition {
  StateId s;
  ActionId a;
  StateId next;
  float reward;
  bool done;
};

RunRecord run_q_learning(const RlEnvironment& env, const RlConfig& cfg) {
  const std::size_t na = env.num_actions();
  std::vector<double> q(env.num_states() * na, 0.0);
  std::vector<Transition> replay;
  replay.reserve(cfg.replay_size);
  std::size_t replay_head = 0;
  Harness h(env, cfg);

  auto greedy = [&](StateId s) { return static_cast<ActionId>(argmax_row(&q[s * na], na)); };
  auto evaluate = [&] {
    RunSample out;
    out.env_steps = h.steps;
    out.test_reward = mean_eval(h, env, cfg, greedy);
    double err = 0.0;
    const auto& p = env.start_distribution();
    for (std::size_t i = 0; i < p.support_size(); ++i) {
      const StateId s = p.states()[i];
      double e = 0.0;
      for (ActionId a = 0; a < na; ++a) e += std::abs(q[s * na + a] - env.q_star(s, a));
      err += p.probs()[i] * e / static_cast<double>(na);
    }
    out.value_error = err;
    return out;
  };

  while (h.steps < cfg.max_env_steps) {
    StateId s = env.sample_start(h.rng());
    std::size_t used = 0;
    for (std::size_t t = 0; t < cfg.horizon && h.steps < cfg.max_env_steps; ++t) {
      const ActionId a = h.explore() ? h.random_action() : greedy(s);
      const StepOutcome o = step(env, s, a, used, cfg.base_action_budget);
      if (o.cut) break;
      ++h.steps;
      const Transition tr{s, a, o.next, static_cast<float>(o.reward), o.done};
      if (replay.size() < cfg.replay_size) {
        replay.push_back(tr);
      } else {
        replay[replay_head] = tr;
        replay_head = (replay_head + 1) % cfg.replay_size;
      }
      if (o.done || used >= cfg.base_action_budget) break;
      s = o.next;
    }
    ++h.episodes;
    if (h.episodes % cfg.update_every != 0 || replay.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, replay.size() - 1);
    for (std::size_t b = 0; b < cfg.batch; ++b) {
      const Transition& tr = replay[pick(h.rng())];
      double target = tr.reward;
      if (!tr.done) target += cfg.gamma * q[tr.next * na + argmax_row(&q[tr.next * na], na)];
      double& cell = q[tr.s * na + tr.a];
      cell += cfg.alpha * (target - cell);
    }
    if (h.after_update(evaluate, true)) return h.finish(true);
  }
  return h.finish(false);
}

RunRecord run_value_iteration(const RlEnvironment& env, const RlConfig& cfg) {
  const std::size_t na = env.num_actions();
  std::vector<double> v(env.num_states(), 0.0);
  v[env.goal()] = 1.0;
  std::vector<StateId> replay;
  replay.reserve(cfg.replay_size);
  std::size_t replay_head = 0;
  Harness h(env, cfg);

  auto value = [&](StateId s, ActionId a) {
    const StateId t = env.next(s, a);
    if (t == kDead) return 0.0;
    if (t == env.goal()) return 1.0;
    return cfg.gamma * v[t];
  };
  auto greedy = [&](StateId s) {
    ActionId best = 0;
    double bv = value(s, 0);
    for (ActionId a = 1; a < na; ++a) {
      const double x = value(s, a);
      if (x > bv) {
        bv = x;
        best = a;
      }
    }
    return best;
  };
  auto evaluate = [&] {
    RunSample out;
    out.env_steps = h.steps;
    out.test_reward = mean_eval(h, env, cfg, greedy);
    out.value_error = env.start_distribution().expectation([&](StateId s) { return std::abs(v[s] - env.v_star(s)); });
    return out;
  };

  while (h.steps < cfg.max_env_steps) {
    StateId s = env.sample_start(h.rng());
    std::size_t used = 0;
    for (std::size_t t = 0; t < cfg.horizon && h.steps < cfg.max_env_steps; ++t) {
      // Expanding every successor of s costs |A| environment steps.
      h.steps += na;
      if (replay.size() < cfg.replay_size) {
        replay.push_back(s);
      } else {
        replay[replay_head] = s;
        replay_head = (replay_head + 1) % cfg.replay_size;
      }
      const ActionId a = h.explore() ? h.random_action() : greedy(s);
      const StepOutcome o = step(env, s, a, used, cfg.base_action_budget);
      if (o.cut || o.done || used >= cfg.base_action_budget) break;
      s = o.next;
    }
    ++h.episodes;
    if (h.episodes % cfg.update_every != 0 || replay.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, replay.size() - 1);
    for (std::size_t b = 0; b < cfg.batch; ++b) {
      const StateId x = replay[pick(h.rng())];
      double best = value(x, 0);
      for (ActionId a = 1; a < na; ++a) best = std::max(best, value(x, a));
      v[x] += cfg.alpha * (best - v[x]);
    }
    if (h.after_update(evaluate, true)) return h.finish(true);
  }
  return h.finish(false);
}

RunRecord run_reinforce(const RlEnvironment& env, const RlConfig& cfg) {
  const std::size_t na = env.num_actions();
  std::vector<double> theta(env.num_states() * na, 0.0);
  std::vector<double> probs(na);
  Harness h(env, cfg);

  auto policy_probs = [&](StateId s) {
    const double* row = &theta[s * na];
    const double m = *std::max_element(row, row + na);
    double z = 0.0;
    for (std::size_t a = 0; a < na; ++a) z += (probs[a] = std::exp(row[a] - m));
    for (double& x : probs) x /= z;
  };
  auto sample = [&](StateId s, Rng& rng) {
    policy_probs(s);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (ActionId a = 0; a + 1 < na; ++a) {
      if (u < probs[a]) return a;
      u -= probs[a];
    }
    return static_cast<ActionId>(na - 1);
  };
  auto evaluate = [&] {
    RunSample out;
    out.env_steps = h.steps;
    out.test_reward = mean_eval(h, env, cfg, [&](StateId s) { return sample(s, h.eval_rng()); });
    out.value_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  };

  std::vector<std::pair<StateId, ActionId>> trajectory;
  while (h.steps < cfg.max_env_steps) {
    StateId s = env.sample_start(h.rng());
    std::size_t used = 0;
    trajectory.clear();
    bool success = false;
    for (std::size_t t = 0; t < cfg.horizon && h.steps < cfg.max_env_steps; ++t) {
      const ActionId a = sample(s, h.rng());
      const StepOutcome o = step(env, s, a, used, cfg.base_action_budget);
      if (o.cut) break;
      ++h.steps;
      trajectory.emplace_back(s, a);
      if (o.done) {
        success = o.reward > 0.0;
        break;
      }
      if (used >= cfg.base_action_budget) break;
      s = o.next;
    }
    ++h.episodes;
    if (success) {
      const std::size_t len = trajectory.size();
      for (std::size_t t = 0; t < len; ++t) {
        const double g = std::pow(cfg.gamma, static_cast<double>(len - 1 - t));
        const auto [st, at] = trajectory[t];
        policy_probs(st);
        for (ActionId a = 0; a < na; ++a) theta[st * na + a] += cfg.alpha * g * ((a == at ? 1.0 : 0.0) - probs[a]);
      }
    }
    if (h.after_update(evaluate, false)) return h.finish(true);
  }
  return h.finish(false);
}

}  // namespace

double greedy_reward_exact(const RlEnvironment& env, const std::function<ActionId(StateId)>& policy,
                           std::size_t horizon, std::size_t budget) {
  return env.start_distribution().expectation(
      [&](StateId s) { return rollout_reward(env, s, policy, horizon, budget); });
}

RunRecord run(const RlEnvironment& env, const RlConfig& cfg) {
  cfg.validate();
  if (std::abs(cfg.gamma - env.gamma()) > 0.0) fail(ErrorCode::config_invalid, "config gamma differs from environment");
  switch (cfg.algorithm) {
    case Algorithm::q_learning: return run_q_learning(env, cfg);
    case Algorithm::rl_value_iteration: return run_value_iteration(env, cfg);
    case Algorithm::reinforce: return run_reinforce(env, cfg);
  }
  fail(ErrorCode::config_invalid, "unknown algorithm");
}

}  // namespace dsmdp::rl
