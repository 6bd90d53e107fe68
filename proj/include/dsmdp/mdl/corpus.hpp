#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsmdp/core/distribution.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp::mdl {

// Offline experience: base-action sequences over a labelled alphabet.
struct Corpus {
  std::vector<std::string> alphabet;
  std::vector<std::vector<ActionId>> solutions;
  std::vector<double> weights;  // empty = uniform

  std::size_t num_base_actions() const noexcept { return alphabet.size(); }
  // Normalized per-solution weights.
  std::vector<double> normalized_weights() const;
  void validate() const;
};

// One sequence per line. Labels are whitespace-separated; with a
// single-character alphabet a compact token ("RRD") is split into characters.
// An empty alphabet is inferred from the file in order of first appearance.
Corpus parse_corpus(const std::string& text, std::vector<std::string> alphabet = {});
Corpus load_corpus(const std::string& path, std::vector<std::string> alphabet = {});
std::string format_corpus(const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

// Corpus over a compact single-character alphabet, e.g. {"RRRR", "RD"}.
Corpus corpus_from_strings(const std::vector<std::string>& sequences, std::vector<std::string> alphabet);

// Shortest solution for s: at each step the lowest action id that
// decreases d by one.
std::vector<ActionId> canonical_solution(const TabularDsmdp& mdp, StateId s);

// `count` canonical solutions to states drawn i.i.d. from p.
Corpus sample_solution_corpus(const TabularDsmdp& mdp, const StateDistribution& p, std::size_t count,
                              std::uint64_t seed);

// Macros written as compact label strings or whitespace-separated labels.
std::vector<std::vector<ActionId>> parse_macros(const Corpus& corpus, const std::vector<std::string>& macros);
std::string format_sequence(const Corpus& corpus, const std::vector<ActionId>& base_sequence);

}  // namespace dsmdp::mdl
