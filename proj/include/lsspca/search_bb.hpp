#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lsspca/solver.hpp"

namespace lsspca {

struct SearchConfig {
  std::vector<int> cardinalities;
  Mode mode = Mode::uncorrelated;
  std::vector<std::optional<IndexSet>> start_sets;  // per component, optional
  bool order_variables = false;
  std::optional<double> best_so_far;  // initial incumbent for the bound
  int threads = 1;
  double budget = 1e6;  // max subsets for exhaustive_search

  std::optional<IndexSet> start_set_for(int component_index) const {
    if (component_index < static_cast<int>(start_sets.size()))
      return start_sets[component_index];
    return std::nullopt;
  }
};

struct SearchResult {
  SparseComponent component;
  std::uint64_t nodes_visited = 0;
  bool optimal = false;
  double objective = 0.0;  // what the search maximized (see component.vexp for the reported value)
};

/// Evaluates every cardinality-c support; the tie-break is the
/// lexicographically smallest support. Throws BudgetExceeded when C(p, c)
/// (restricted to the start set) exceeds cfg.budget.
SearchResult exhaustive_search(const SolveContext& ctx, int c, const SearchConfig& cfg = {});

/// Exact per-component branch and bound over the subset lattice, top-down
/// from the start set (default: all variables). Matches exhaustive_search
/// on every instance, including the tie-break.
SearchResult branch_and_bound(const SolveContext& ctx, int c, const SearchConfig& cfg = {});

/// Greedy chain: component j is optimized by branch_and_bound with
/// components 1..j-1 frozen.
ComponentSet sequential_fit(const CovarianceMatrix& S, const SearchConfig& cfg);

}  // namespace lsspca
