#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "maxcov/graph.hpp"

namespace maxcov {

enum class OptMethod { exhaustive, branch_bound };
std::string_view to_string(OptMethod method);

struct OptResult {
  std::size_t value = 0;
  NodeSet witness;
  std::size_t nodes_explored = 0;
  OptMethod method = OptMethod::exhaustive;
  // Set when a budget stopped the search: value is then only a lower bound.
  bool best_effort = false;
  double time_ms = 0.0;
};

struct ExhaustiveOptions {
  // Largest binom(n, k) that will be enumerated.
  double subset_budget = 1e7;
};

struct BranchBoundOptions {
  // Wall-clock budget in milliseconds; <= 0 disables it.
  double time_budget_ms = 0.0;
  // Maximum expanded search nodes; 0 disables it. Unlike the time budget
  // this keeps best-effort results reproducible.
  std::size_t node_budget = 0;
  // Maximum queued search nodes before giving up (memory guard).
  std::size_t max_frontier = 50'000'000;
};

// max |N(S)| over |S| <= k by enumeration of all min(k, n)-subsets.
// Throws CapacityError when binom(n, k) exceeds the budget.
OptResult opt_exhaustive(const BipartiteGraph& graph, std::size_t k,
                         const ExhaustiveOptions& options = {});

// Best-first branch and bound. Nodes fix left indices in ascending order
// (include/exclude); a node's bound is its coverage plus the largest
// k - |S| residual gains among undecided nodes, capped by min(m, |N(L)|).
// The incumbent starts at the greedy value.
OptResult opt_branch_bound(const BipartiteGraph& graph, std::size_t k,
                           const BranchBoundOptions& options = {});

// CSV with header "value,method,explored,time_ms".
void write_opt_csv(std::ostream& out, const OptResult& result);

}  // namespace maxcov
