#include "dsmdp/core/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "dsmdp/core/error.hpp"

namespace dsmdp {

StateDistribution StateDistribution::from_weights(std::vector<std::pair<StateId, double>> weights) {
  std::sort(weights.begin(), weights.end());
  StateDistribution out;
  double total = 0.0;
  for (const auto& [s, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorCode::invalid_argument, "distribution weights must be finite and >= 0");
    if (s == kDead) fail(ErrorCode::invalid_argument, "distribution cannot place mass on DEAD");
    if (w == 0.0) continue;
    if (!out.states_.empty() && out.states_.back() == s) {
      out.probs_.back() += w;
    } else {
      out.states_.push_back(s);
      out.probs_.push_back(w);
    }
    total += w;
  }
  if (total <= 0.0) fail(ErrorCode::invalid_argument, "distribution has no mass");
  for (double& p : out.probs_) p /= total;
  return out;
}

StateDistribution StateDistribution::from_dense(std::span<const double> weights) {
  std::vector<std::pair<StateId, double>> w;
  for (std::size_t s = 0; s < weights.size(); ++s)
    if (weights[s] != 0.0) w.emplace_back(static_cast<StateId>(s), weights[s]);
  return from_weights(std::move(w));
}

StateDistribution StateDistribution::point_mass(StateId s) { return from_weights({{s, 1.0}}); }

StateDistribution StateDistribution::uniform(std::span<const StateId> states) {
  std::vector<std::pair<StateId, double>> w;
  w.reserve(states.size());
  for (StateId s : states) w.emplace_back(s, 1.0);
  return from_weights(std::move(w));
}

double StateDistribution::prob(StateId s) const noexcept {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return 0.0;
  return probs_[static_cast<std::size_t>(it - states_.begin())];
}

double StateDistribution::max_prob() const noexcept {
  return probs_.empty() ? 0.0 : *std::max_element(probs_.begin(), probs_.end());
}

double StateDistribution::entropy() const noexcept { return entropy_nats(probs_); }

double entropy_nats(std::span<const double> probs) noexcept {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

}  // namespace dsmdp
