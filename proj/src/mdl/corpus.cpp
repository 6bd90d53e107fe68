#include "dsmdp/mdl/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "dsmdp/core/error.hpp"
#include "dsmdp/core/graph.hpp"

namespace dsmdp::mdl {

namespace {

bool single_char(const std::vector<std::string>& alphabet) {
  return !alphabet.empty() &&
         std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& l) { return l.size() == 1; });
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

class LabelIndex {
 public:
  LabelIndex(std::vector<std::string>& alphabet, bool infer) : alphabet_(alphabet), infer_(infer) {}

  ActionId lookup(const std::string& label) {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
    if (it != alphabet_.end()) return static_cast<ActionId>(it - alphabet_.begin());
    if (!infer_) fail(ErrorCode::invalid_argument, "unknown action label '" + label + "'");
    alphabet_.push_back(label);
    return static_cast<ActionId>(alphabet_.size() - 1);
  }

  // Splits a compact token when every character is a known one-character label.
  bool append_compact(const std::string& tok, std::vector<ActionId>& out) {
    if (infer_ || tok.size() < 2 || !single_char(alphabet_)) return false;
    for (char c : tok)
      if (std::find(alphabet_.begin(), alphabet_.end(), std::string(1, c)) == alphabet_.end()) return false;
    for (char c : tok) out.push_back(lookup(std::string(1, c)));
    return true;
  }

 private:
  std::vector<std::string>& alphabet_;
  bool infer_;
};

std::vector<ActionId> parse_line(LabelIndex& index, const std::string& line) {
  std::vector<ActionId> seq;
  for (const auto& tok : split_ws(line))
    if (!index.append_compact(tok, seq)) seq.push_back(index.lookup(tok));
  return seq;
}

std::vector<ActionId> walk_down(const TabularDsmdp& mdp, const SolutionLengthTable& d, StateId s) {
  std::vector<ActionId> out;
  while (!mdp.is_goal(s)) {
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      StateId t = mdp.successor(s, a);
      if (t != kDead && d.d[t] + 1 == d.d[s]) {
        out.push_back(a);
        s = t;
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> Corpus::normalized_weights() const {
  std::vector<double> w = weights.empty() ? std::vector<double>(solutions.size(), 1.0) : weights;
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) fail(ErrorCode::invalid_argument, "corpus weights sum to zero");
  for (double& x : w) x /= total;
  return w;
}

void Corpus::validate() const {
  if (solutions.empty()) fail(ErrorCode::invalid_argument, "corpus is empty");
  if (!weights.empty() && weights.size() != solutions.size())
    fail(ErrorCode::invalid_argument, "corpus weights do not match solutions");
  for (double w : weights)
    if (!(w >= 0.0)) fail(ErrorCode::invalid_argument, "corpus weight is negative");
  for (const auto& s : solutions) {
    if (s.empty()) fail(ErrorCode::invalid_argument, "corpus contains an empty sequence");
    for (ActionId a : s)
      if (a >= alphabet.size()) fail(ErrorCode::invalid_argument, "corpus action outside the alphabet");
  }
}

Corpus parse_corpus(const std::string& text, std::vector<std::string> alphabet) {
  Corpus c;
  const bool infer = alphabet.empty();
  c.alphabet = std::move(alphabet);
  LabelIndex index(c.alphabet, infer);
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (split_ws(line).empty() || line.front() == '#') continue;
    c.solutions.push_back(parse_line(index, line));
  }
  c.validate();
  return c;
}

Corpus load_corpus(const std::string& path, std::vector<std::string> alphabet) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open corpus file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str(), std::move(alphabet));
}

std::string format_sequence(const Corpus& corpus, const std::vector<ActionId>& base_sequence) {
  const bool compact = single_char(corpus.alphabet);
  std::string out;
  for (std::size_t i = 0; i < base_sequence.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += corpus.alphabet.at(base_sequence[i]);
  }
  return out;
}

std::string format_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& s : corpus.solutions) {
    // Files always use whitespace-separated labels.
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) out += ' ';
      out += corpus.alphabet.at(s[i]);
    }
    out += '\n';
  }
  return out;
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write corpus file " + path);
  out << format_corpus(corpus);
}

Corpus corpus_from_strings(const std::vector<std::string>& sequences, std::vector<std::string> alphabet) {
  Corpus c;
  c.alphabet = std::move(alphabet);
  LabelIndex index(c.alphabet, false);
  for (const auto& s : sequences) c.solutions.push_back(parse_line(index, s));
  c.validate();
  return c;
}

std::vector<ActionId> canonical_solution(const TabularDsmdp& mdp, StateId s) {
  const auto d = shortest_solution_lengths(mdp);
  if (!d.solvable(s) || mdp.is_goal(s)) fail(ErrorCode::support_unsolvable, "state has no nonempty solution");
  return walk_down(mdp, d, s);
}

Corpus sample_solution_corpus(const TabularDsmdp& mdp, const StateDistribution& p, std::size_t count,
                              std::uint64_t seed) {
  if (count == 0) fail(ErrorCode::invalid_argument, "corpus size must be positive");
  const auto d = shortest_solution_lengths(mdp);
  require_solvable_support(p, mdp, d);
  Corpus c;
  c.alphabet = mdp.action_labels();
  if (c.alphabet.size() != mdp.num_actions()) {
    c.alphabet.clear();
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) c.alphabet.push_back(std::to_string(a));
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(p.probs().begin(), p.probs().end());
  for (std::size_t i = 0; i < count; ++i) {
    StateId s = p.states()[pick(rng)];
    c.solutions.push_back(walk_down(mdp, d, s));
  }
  return c;
}

std::vector<std::vector<ActionId>> parse_macros(const Corpus& corpus, const std::vector<std::string>& macros) {
  std::vector<std::string> alphabet = corpus.alphabet;
  LabelIndex index(alphabet, false);
  std::vector<std::vector<ActionId>> out;
  for (const auto& m : macros) {
    auto seq = parse_line(index, m);
    if (seq.size() == 1 && single_char(corpus.alphabet) && m.size() > 1)
      fail(ErrorCode::invalid_argument, "bad macro '" + m + "'");
    if (seq.size() < 2) fail(ErrorCode::invalid_argument, "macro '" + m + "' is shorter than 2");
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace dsmdp::mdl
