#include "dsmdp/mdl/objectives.hpp"

#include <cmath>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/error.hpp"
#include "dsmdp/skills/rewrite.hpp"

namespace dsmdp::mdl {

double AbstractedCorpus::action_entropy() const { return entropy_nats(action_frequency); }

double AbstractedCorpus::length_entropy() const {
  std::vector<double> probs;
  for (const auto& [len, w] : length_distribution) probs.push_back(w);
  return entropy_nats(probs);
}

AbstractedCorpus abstract_corpus(const Corpus& corpus, const std::vector<std::vector<ActionId>>& macros) {
  corpus.validate();
  for (const auto& m : macros) {
    if (m.size() < 2) fail(ErrorCode::invalid_argument, "macro shorter than 2");
    for (ActionId a : m)
      if (a >= corpus.num_base_actions()) fail(ErrorCode::invalid_argument, "macro action outside the alphabet");
  }
  AbstractedCorpus out;
  out.num_base_actions = corpus.num_base_actions();
  out.macros = macros;
  out.weights = corpus.normalized_weights();
  out.action_frequency.assign(out.num_actions(), 0.0);

  std::map<std::vector<ActionId>, double> sequence_mass;
  double token_mass = 0.0;
  for (std::size_t i = 0; i < corpus.solutions.size(); ++i) {
    auto r = skills::rewrite_min_length(corpus.solutions[i], macros, out.num_base_actions);
    if (skills::expand_rewrite(r, macros, out.num_base_actions) != corpus.solutions[i])
      fail(ErrorCode::invalid_argument, "rewrite does not expand to its source");
    const double w = out.weights[i];
    for (ActionId a : r) out.action_frequency[a] += w;
    token_mass += w * static_cast<double>(r.size());
    out.length_distribution[r.size()] += w;
    sequence_mass[r] += w;
    out.rewritten.push_back(std::move(r));
  }
  for (double& f : out.action_frequency) f /= token_mass;
  out.mean_length = token_mass;
  std::vector<double> probs;
  for (const auto& [seq, w] : sequence_mass) probs.push_back(w);
  out.sequence_entropy = entropy_nats(probs);
  return out;
}

const char* to_string(Objective o) {
  switch (o) {
    case Objective::L1: return "L1";
    case Objective::L2: return "L2";
    case Objective::L3: return "L3";
    case Objective::L4: return "L4";
    case Objective::L5: return "L5";
    case Objective::J6: return "J6";
    case Objective::L7: return "L7";
  }
  return "?";
}

Objective objective_from_string(const std::string& s) {
  for (Objective o : {Objective::L1, Objective::L2, Objective::L3, Objective::L4, Objective::L5, Objective::J6,
                      Objective::L7})
    if (s == to_string(o)) return o;
  fail(ErrorCode::invalid_argument, "unknown objective '" + s + "'");
}

bool is_maximized(Objective o) noexcept { return o == Objective::J6; }

namespace {

// |A+| / ln|A+|.
double size_factor(double a_plus) {
  if (!(a_plus > 1.0)) fail(ErrorCode::degenerate_denominator, "|A+| must exceed 1");
  return a_plus / std::log(a_plus);
}

}  // namespace

double objective(const AbstractedCorpus& abstracted, Objective which, const ObjectiveParams& params) {
  const double a_plus = params.augmented_actions.value_or(static_cast<double>(abstracted.num_actions()));
  const double a_base = params.base_actions.value_or(static_cast<double>(abstracted.num_base_actions));
  const double h_plus = params.sequence_entropy.value_or(abstracted.sequence_entropy);
  const double lbar = abstracted.mean_length;
  switch (which) {
    case Objective::L1:
      return size_factor(a_plus) * metrics::ic_from_stats(h_plus, 1.0, a_base, params.epsilon).raw;
    case Objective::L2:
      return size_factor(a_plus) * h_plus;
    case Objective::L3:
      return h_plus;
    case Objective::L4:
      return abstracted.length_entropy() + lbar * abstracted.action_entropy();
    case Objective::L5:
      return lbar * abstracted.action_entropy();
    case Objective::J6:
      if (!params.entropy_p) fail(ErrorCode::missing_param, "J6 needs H[p]");
      return metrics::ic_from_stats(*params.entropy_p, params.mean_d.value_or(lbar), a_plus, params.epsilon).value;
    case Objective::L7:
      return lbar * std::log(a_plus);
  }
  fail(ErrorCode::invalid_argument, "unknown objective");
}

}  // namespace dsmdp::mdl
