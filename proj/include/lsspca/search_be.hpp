#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lsspca/solver.hpp"

namespace lsspca {

enum class TrimNorm { l1_contribution, l2 };

enum class StopReason {
  threshold_met,   // every surviving normalized loading > tau
  min_cardinality, // k_j reached
  variance_loss,   // rollback: next removal would lose more than mv_j
  total_variance,  // outer loop: cumulative Vexp reached mv
  exhausted        // nothing left to trim
};

std::string to_string(StopReason reason);

struct TrimConfig {
  int d = 1;                        // max components
  std::optional<double> mv;         // min cumulative Vexp as a fraction of tr(S)
  Mode mode = Mode::correlated;     // the paper's BE default
  TrimNorm norm = TrimNorm::l1_contribution;
  int batch = 1;                    // loadings trimmed per iteration

  // per-component settings; the last entry repeats when shorter than d
  std::vector<double> tau{0.0};
  std::vector<int> min_cardinality{1};
  std::vector<std::optional<double>> max_relative_loss{std::nullopt};
  std::vector<std::optional<IndexSet>> start_sets;

  double tau_for(int j) const;                       // j is 1-based
  int min_cardinality_for(int j) const;
  std::optional<double> max_relative_loss_for(int j) const;
  std::optional<IndexSet> start_set_for(int j) const;
  void validate() const;
};

struct TrimStep {
  std::vector<int> removed;            // indices removed this iteration
  std::vector<double> magnitudes;      // |loading| at removal, matching `removed`
  double vexp_after = 0.0;
  int cardinality_after = 0;
};

struct TrimTrace {
  IndexSet start_set;
  double vexp_full = 0.0;  // untrimmed solution's Vexp
  std::vector<TrimStep> steps;
  StopReason stop_reason = StopReason::threshold_met;
};

/// One component of Algorithm 1: solve on the start set, then repeatedly
/// remove the smallest normalized loading(s) and re-solve, subject to the
/// threshold, cardinality, and variance-loss stopping rules.
std::pair<SparseComponent, TrimTrace> trim_component(const SolveContext& ctx,
                                                     const TrimConfig& cfg, int j);

/// Full Algorithm 1: up to d components, stopping early once cumulative
/// Vexp reaches mv (checked after each accepted component).
std::pair<ComponentSet, std::vector<TrimTrace>> backward_eliminate(
    const CovarianceMatrix& S, const TrimConfig& cfg);

}  // namespace lsspca
