#include "lsspca/search_be.hpp"

#include <algorithm>
#include <cmath>

namespace lsspca {

namespace {

template <typename T>
const T& last_or_at(const std::vector<T>& v, int j, const T& fallback) {
  if (v.empty()) return fallback;
  const size_t k = static_cast<size_t>(j - 1);
  return k < v.size() ? v[k] : v.back();
}

// normalized magnitudes over the support, in support order
std::vector<double> normalized_magnitudes(const SparseComponent& comp, TrimNorm norm) {
  const auto& idx = comp.support.indices();
  double scale = 0.0;
  for (int i : idx) scale += norm == TrimNorm::l1_contribution ? std::abs(comp.loadings[i])
                                                               : comp.loadings[i] * comp.loadings[i];
  if (norm == TrimNorm::l2) scale = std::sqrt(scale);
  std::vector<double> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(std::abs(comp.loadings[i]) / scale);
  return out;
}

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::threshold_met: return "threshold_met";
    case StopReason::min_cardinality: return "min_cardinality";
    case StopReason::variance_loss: return "variance_loss";
    case StopReason::total_variance: return "total_variance";
    case StopReason::exhausted: return "exhausted";
  }
  return "?";
}

double TrimConfig::tau_for(int j) const {
  static const double zero = 0.0;
  return last_or_at(tau, j, zero);
}

int TrimConfig::min_cardinality_for(int j) const {
  static const int one = 1;
  return last_or_at(min_cardinality, j, one);
}

std::optional<double> TrimConfig::max_relative_loss_for(int j) const {
  static const std::optional<double> none;
  return last_or_at(max_relative_loss, j, none);
}

std::optional<IndexSet> TrimConfig::start_set_for(int j) const {
  static const std::optional<IndexSet> none;
  return last_or_at(start_sets, j, none);
}

void TrimConfig::validate() const {
  if (d < 1) throw InputError("component count must be at least 1");
  if (batch < 1) throw InputError("batch size must be at least 1");
  if (mv && *mv < 0) throw InputError("minimum total variance must be nonnegative");
  for (double t : tau)
    if (t < 0 || t > 1) throw InputError("threshold must lie in [0, 1]");
  for (int k : min_cardinality)
    if (k < 1) throw InputError("minimum cardinality must be at least 1");
  for (const auto& loss : max_relative_loss)
    if (loss && (*loss < 0 || *loss > 1)) throw InputError("maximum relative loss must lie in [0, 1]");
}

std::pair<SparseComponent, TrimTrace> trim_component(const SolveContext& ctx,
                                                     const TrimConfig& cfg, int j) {
  const double tau = cfg.tau_for(j);
  int k_min = cfg.min_cardinality_for(j);
  if (ctx.mode() == Mode::uncorrelated) k_min = std::max(k_min, j);
  const std::optional<double> max_loss = cfg.max_relative_loss_for(j);

  IndexSet support = cfg.start_set_for(j).value_or(IndexSet::full(ctx.covariance().dim()));
  if (ctx.mode() == Mode::uncorrelated && support.cardinality() < j)
    throw StartSetInfeasible("start set of cardinality " + std::to_string(support.cardinality()) +
                             " cannot host component " + std::to_string(j) +
                             " of an uncorrelated chain");

  SparseComponent comp = solve_on_support(ctx, support);
  TrimTrace trace;
  trace.start_set = support;
  trace.vexp_full = comp.vexp;
  trace.stop_reason = StopReason::exhausted;

  while (true) {
    if (comp.support.cardinality() <= k_min) {
      trace.stop_reason = StopReason::min_cardinality;
      break;
    }
    const std::vector<double> mags = normalized_magnitudes(comp, cfg.norm);
    std::vector<int> order(mags.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return mags[a] < mags[b]; });
    int trimmable = 0;
    for (double m : mags)
      if (m <= tau) ++trimmable;
    if (trimmable == 0) {
      trace.stop_reason = StopReason::threshold_met;
      break;
    }

    // at most `batch` per pass, finishing one at a time near the floor
    const int remove = std::min({cfg.batch, comp.support.cardinality() - k_min, trimmable});
    TrimStep step;
    IndexSet next = comp.support;
    for (int k = 0; k < remove; ++k) {
      const int variable = comp.support.indices()[order[k]];
      step.removed.push_back(variable);
      step.magnitudes.push_back(mags[order[k]]);
      next = next.without(variable);
    }
    SparseComponent trimmed = solve_on_support(ctx, next);
    if (max_loss && 1.0 - trimmed.vexp / trace.vexp_full > *max_loss) {
      trace.stop_reason = StopReason::variance_loss;  // roll back to the current solution
      break;
    }
    step.vexp_after = trimmed.vexp;
    step.cardinality_after = trimmed.support.cardinality();
    trace.steps.push_back(std::move(step));
    comp = std::move(trimmed);
  }
  return {std::move(comp), std::move(trace)};
}

std::pair<ComponentSet, std::vector<TrimTrace>> backward_eliminate(const CovarianceMatrix& S,
                                                                   const TrimConfig& cfg) {
  cfg.validate();
  ComponentSet set(S);
  std::vector<TrimTrace> traces;
  SolveContext ctx = SolveContext::initial(S, cfg.mode);
  for (int j = 1; j <= cfg.d; ++j) {
    auto [comp, trace] = trim_component(ctx, cfg, j);
    ctx = ctx.with(comp);
    set.add(std::move(comp));
    traces.push_back(std::move(trace));
    if (cfg.mv && set.cumulative_vexp().back() >= *cfg.mv * S.trace()) {
      traces.back().stop_reason = StopReason::total_variance;
      break;
    }
  }
  return {std::move(set), std::move(traces)};
}

}  // namespace lsspca
