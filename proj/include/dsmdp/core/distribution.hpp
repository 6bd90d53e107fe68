#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dsmdp/core/mdp.hpp"

namespace dsmdp {

// Sparse probability distribution over state ids, sorted by state, no zeros.
class StateDistribution {
 public:
  StateDistribution() = default;

  // Normalizes non-negative weights; duplicate states are merged.
  static StateDistribution from_weights(std::vector<std::pair<StateId, double>> weights);
  static StateDistribution from_dense(std::span<const double> weights);
  static StateDistribution point_mass(StateId s);
  static StateDistribution uniform(std::span<const StateId> states);

  std::span<const StateId> states() const noexcept { return states_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t support_size() const noexcept { return states_.size(); }
  bool empty() const noexcept { return states_.empty(); }

  double prob(StateId s) const noexcept;
  double max_prob() const noexcept;
  double entropy() const noexcept;  // nats

  template <class F>
  double expectation(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < states_.size(); ++i) acc += probs_[i] * f(states_[i]);
    return acc;
  }

  friend bool operator==(const StateDistribution&, const StateDistribution&) = default;

 private:
  std::vector<StateId> states_;
  std::vector<double> probs_;
};

// Shannon entropy in nats of a (not necessarily normalized to 1 exactly) pmf.
double entropy_nats(std::span<const double> probs) noexcept;

}  // namespace dsmdp
