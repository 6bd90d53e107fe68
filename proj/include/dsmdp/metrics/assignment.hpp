#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsmdp/core/graph.hpp"
#include "dsmdp/core/mdp.hpp"

namespace dsmdp::metrics {

// Size of a maximum matching; adj[l] lists right vertices < num_right.
std::size_t max_bipartite_matching(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t num_right);

enum class AssignmentMethod { matching_exact, exhaustive_exact, greedy_lower_bound, greedy_upper_bound, separable_exact };
const char* to_string(AssignmentMethod m);

struct AssignmentResult {
  double entropy = 0.0;  // nats, of the merged distribution
  AssignmentMethod method = AssignmentMethod::matching_exact;
  std::vector<std::uint32_t> choice;  // chosen right vertex per left vertex
};

struct AssignmentLimits {
  std::size_t exhaustive_max_left = 12;
  std::uint64_t node_cap = 5'000'000;
};

// Each left vertex i (weight probs[i]) picks one of adj[i]; weights of left
// vertices picking the same right vertex merge. Maximize / minimize the
// entropy of the merged distribution.
AssignmentResult max_entropy_assignment(std::span<const double> probs,
                                        const std::vector<std::vector<std::uint32_t>>& adj, std::size_t num_right,
                                        const AssignmentLimits& limits = {});
AssignmentResult min_entropy_assignment(std::span<const double> probs,
                                        const std::vector<std::vector<std::uint32_t>>& adj, std::size_t num_right,
                                        const AssignmentLimits& limits = {});

// Shortest solutions of s by DFS over d-decreasing edges, at most `cap`.
std::vector<std::vector<ActionId>> enumerate_shortest_solutions(const TabularDsmdp& mdp, const SolutionLengthTable& d,
                                                                StateId s, std::size_t cap, bool* cap_hit = nullptr);

// Solutions of s of length at most max_len (any, not only shortest), at most `cap`.
std::vector<std::vector<ActionId>> enumerate_solutions_up_to(const TabularDsmdp& mdp, const SolutionLengthTable& d,
                                                             StateId s, std::size_t max_len, std::size_t cap,
                                                             bool* cap_hit = nullptr);

}  // namespace dsmdp::metrics
