#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsmdp/mdl/corpus.hpp"
#include "dsmdp/metrics/incompressibility.hpp"

namespace dsmdp::mdl {

struct AbstractedCorpus {
  std::size_t num_base_actions = 0;
  std::vector<std::vector<ActionId>> macros;
  std::vector<std::vector<ActionId>> rewritten;
  std::vector<double> weights;                   // normalized
  std::vector<double> action_frequency;          // p_a over A+, indexed by augmented id
  std::map<std::size_t, double> length_distribution;  // p_l
  double mean_length = 0.0;                      // l̄
  double sequence_entropy = 0.0;                 // H[P̂+] over distinct rewritten sequences

  std::size_t num_actions() const noexcept { return num_base_actions + macros.size(); }
  double action_entropy() const;
  double length_entropy() const;
};

AbstractedCorpus abstract_corpus(const Corpus& corpus, const std::vector<std::vector<ActionId>>& macros);

enum class Objective { L1, L2, L3, L4, L5, J6, L7 };
const char* to_string(Objective o);
Objective objective_from_string(const std::string& s);
// J6 is maximized; every other objective is minimized.
bool is_maximized(Objective o) noexcept;

// Unset fields fall back to the abstracted corpus: |A+| from its alphabet
// and macros, |A0| from its base alphabet, H[P̂+] from its sequences. J6
// requires entropy_p.
struct ObjectiveParams {
  std::optional<double> augmented_actions;
  std::optional<double> base_actions;
  std::optional<double> sequence_entropy;
  std::optional<double> mean_d;  // defaults to l̄
  std::optional<double> entropy_p;
  metrics::EpsilonSpec epsilon{metrics::EpsilonMode::sup_grid, 0.02, 1.0, 2001};
};

double objective(const AbstractedCorpus& abstracted, Objective which, const ObjectiveParams& params = {});

}  // namespace dsmdp::mdl
