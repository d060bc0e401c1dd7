#include "lsspca/search_bb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <mutex>

namespace lsspca {

namespace {

constexpr double kTieSlack = 1e-12;

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  SparseComponent component;
  bool valid = false;
};

// Better value wins; ties within the slack go to the lex-smallest support.
bool improves(const Candidate& incumbent, double value, const IndexSet& support) {
  if (!incumbent.valid) return true;
  if (value > incumbent.value + kTieSlack) return true;
  if (value > incumbent.value - kTieSlack && support < incumbent.component.support) return true;
  return false;
}

// Leaf evaluation: the solver's component plus the search objective
// (true Vexp for uncorrelated chains, true incremental for correlated ones).
// Singular or infeasible supports are skipped, not fatal.
std::optional<std::pair<double, SparseComponent>> evaluate_leaf(const SolveContext& ctx,
                                                                const IndexSet& ind) {
  try {
    SparseComponent comp = solve_on_support(ctx, ind);
    return std::make_pair(comp.vexp, std::move(comp));
  } catch (const SingularSupport&) {
  } catch (const InfeasibleConstraints&) {
  } catch (const DegenerateComponent&) {
  }
  return std::nullopt;
}

std::optional<double> evaluate_bound(const SolveContext& ctx, const IndexSet& ind) {
  try {
    return support_bound(ctx, ind);
  } catch (const SingularSupport&) {
  } catch (const InfeasibleConstraints&) {
  } catch (const DegenerateComponent&) {
  }
  return std::nullopt;
}

double combination_count(int n, int c) {
  double out = 1.0;
  for (int k = 1; k <= c; ++k) out *= static_cast<double>(n - c + k) / k;
  return out;
}

std::vector<int> search_domain(const SolveContext& ctx, int c, const SearchConfig& cfg,
                               int component_index) {
  std::vector<int> domain;
  if (auto start = cfg.start_set_for(component_index)) {
    domain = start->indices();
    for (int i : domain)
      if (i >= ctx.covariance().dim()) throw InputError("start set index out of range");
  } else {
    for (int i = 0; i < ctx.covariance().dim(); ++i) domain.push_back(i);
  }
  if (c < 1) throw InputError("cardinality must be at least 1");
  if (c > static_cast<int>(domain.size()))
    throw InputError("cardinality exceeds the candidate variable count");
  if (ctx.mode() == Mode::uncorrelated && c < ctx.order())
    throw CardinalityTooSmall(c, ctx.order());
  return domain;
}

struct BbShared {
  std::mutex mutex;
  double incumbent = -std::numeric_limits<double>::infinity();
  std::atomic<std::uint64_t> nodes{0};

  double read() {
    std::lock_guard lock(mutex);
    return incumbent;
  }
  void raise(double value) {
    std::lock_guard lock(mutex);
    incumbent = std::max(incumbent, value);
  }
};

struct BbNode {
  std::vector<int> support;  // positions into the (possibly reordered) domain
  int start = 0;             // first removable position, canonical enumeration
  double bound = 0.0;
};

class BbWorker {
 public:
  BbWorker(const SolveContext& ctx, int target, const std::vector<int>& domain, BbShared& shared)
      : ctx_(ctx), target_(target), domain_(domain), shared_(shared) {}

  void visit(const BbNode& node) {
    // children: drop one variable at a time, positions >= node.start only
    struct Child {
      BbNode node;
      std::optional<std::pair<double, SparseComponent>> leaf;
    };
    std::vector<Child> children;
    const int size = static_cast<int>(node.support.size());
    for (int i = node.start; i < size; ++i) {
      BbNode child;
      child.support.reserve(size - 1);
      for (int k = 0; k < size; ++k)
        if (k != i) child.support.push_back(node.support[k]);
      child.start = i;
      shared_.nodes.fetch_add(1, std::memory_order_relaxed);

      const IndexSet ind = to_index_set(child.support);
      if (static_cast<int>(child.support.size()) == target_) {
        if (auto leaf = evaluate_leaf(ctx_, ind)) {
          update_best(leaf->first, std::move(leaf->second));
        }
        continue;
      }
      if (auto bound = evaluate_bound(ctx_, ind)) {
        child.bound = *bound;
        const double cutoff = std::max(shared_.read(), best_.valid ? best_.value : -1e300);
        if (child.bound > cutoff - kTieSlack) children.push_back({std::move(child), std::nullopt});
      }
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.node.bound > b.node.bound; });
    for (auto& child : children) {
      const double cutoff = std::max(shared_.read(), best_.valid ? best_.value : -1e300);
      if (child.node.bound > cutoff - kTieSlack) visit(child.node);
    }
  }

  void update_best(double value, SparseComponent comp) {
    if (improves(best_, value, comp.support)) {
      best_.value = value;
      best_.component = std::move(comp);
      best_.valid = true;
      shared_.raise(value);
    }
  }

  IndexSet to_index_set(const std::vector<int>& positions) const {
    std::vector<int> idx;
    idx.reserve(positions.size());
    for (int pos : positions) idx.push_back(domain_[pos]);
    return IndexSet(std::move(idx));
  }

  Candidate take_best() { return std::move(best_); }

 private:
  const SolveContext& ctx_;
  int target_;
  const std::vector<int>& domain_;
  BbShared& shared_;
  Candidate best_;
};

}  // namespace

SearchResult exhaustive_search(const SolveContext& ctx, int c, const SearchConfig& cfg) {
  std::vector<int> domain = search_domain(ctx, c, cfg, ctx.previous_count());
  const int n = static_cast<int>(domain.size());
  const double total = combination_count(n, c);
  if (total > cfg.budget) throw BudgetExceeded(total);

  Candidate best;
  std::uint64_t nodes = 0;
  std::vector<int> pick(c);
  for (int k = 0; k < c; ++k) pick[k] = k;
  while (true) {
    std::vector<int> idx(c);
    for (int k = 0; k < c; ++k) idx[k] = domain[pick[k]];
    IndexSet ind(std::move(idx));
    ++nodes;
    if (auto leaf = evaluate_leaf(ctx, ind)) {
      if (improves(best, leaf->first, leaf->second.support)) {
        best.value = leaf->first;
        best.component = std::move(leaf->second);
        best.valid = true;
      }
    }
    // next lexicographic combination
    int k = c - 1;
    while (k >= 0 && pick[k] == n - c + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int m = k + 1; m < c; ++m) pick[m] = pick[m - 1] + 1;
  }
  if (!best.valid)
    throw InfeasibleConstraints("no feasible support of cardinality " + std::to_string(c));
  return {std::move(best.component), nodes, true, best.value};
}

SearchResult branch_and_bound(const SolveContext& ctx, int c, const SearchConfig& cfg) {
  std::vector<int> domain = search_domain(ctx, c, cfg, ctx.previous_count());

  if (cfg.order_variables) {
    // strongest variables first: weak ones end up in the positions the
    // canonical enumeration strips earliest, so bad subtrees close fast
    std::vector<std::pair<double, int>> scored;
    for (int i : domain) {
      const IndexSet single(std::vector<int>{i});
      auto bound = evaluate_bound(ctx, single);
      scored.emplace_back(bound ? *bound : -1.0, i);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (size_t k = 0; k < scored.size(); ++k) domain[k] = scored[k].second;
  }

  BbShared shared;
  if (cfg.best_so_far) shared.incumbent = *cfg.best_so_far;

  BbNode root;
  for (size_t k = 0; k < domain.size(); ++k) root.support.push_back(static_cast<int>(k));
  shared.nodes.fetch_add(1);

  BbWorker main_worker(ctx, c, domain, shared);
  const IndexSet root_ind = main_worker.to_index_set(root.support);
  if (static_cast<int>(domain.size()) == c) {
    if (auto leaf = evaluate_leaf(ctx, root_ind)) main_worker.update_best(leaf->first, std::move(leaf->second));
  } else if (auto bound = evaluate_bound(ctx, root_ind)) {
    root.bound = *bound;
    if (cfg.threads <= 1) {
      main_worker.visit(root);
    } else {
      // split the root's children across tasks; the shared incumbent only
      // rises, so results are identical to the sequential run
      const int size = static_cast<int>(root.support.size());
      std::vector<std::future<Candidate>> tasks;
      for (int i = 0; i < size; ++i) {
        tasks.push_back(std::async(
            i < cfg.threads ? std::launch::async : std::launch::deferred,
            [&, i]() -> Candidate {
              BbWorker worker(ctx, c, domain, shared);
              BbNode child;
              for (int k = 0; k < size; ++k)
                if (k != i) child.support.push_back(root.support[k]);
              child.start = i;
              shared.nodes.fetch_add(1, std::memory_order_relaxed);
              const IndexSet ind = worker.to_index_set(child.support);
              if (static_cast<int>(child.support.size()) == c) {
                if (auto leaf = evaluate_leaf(ctx, ind)) worker.update_best(leaf->first, std::move(leaf->second));
              } else if (auto b = evaluate_bound(ctx, ind)) {
                child.bound = *b;
                if (child.bound > shared.read() - kTieSlack) worker.visit(child);
              }
              return worker.take_best();
            }));
      }
      Candidate merged;
      for (auto& task : tasks) {
        Candidate local = task.get();
        if (local.valid && improves(merged, local.value, local.component.support)) merged = std::move(local);
      }
      if (merged.valid) main_worker.update_best(merged.value, std::move(merged.component));
    }
  }

  Candidate best = main_worker.take_best();
  if (!best.valid)
    throw InfeasibleConstraints("no feasible support of cardinality " + std::to_string(c));
  return {std::move(best.component), shared.nodes.load(), true, best.value};
}

ComponentSet sequential_fit(const CovarianceMatrix& S, const SearchConfig& cfg) {
  if (cfg.cardinalities.empty()) throw InputError("no cardinalities requested");
  ComponentSet set(S);
  SolveContext ctx = SolveContext::initial(S, cfg.mode);
  for (int c : cfg.cardinalities) {
    SearchResult result = branch_and_bound(ctx, c, cfg);
    ctx = ctx.with(result.component);
    set.add(std::move(result.component));
  }
  return set;
}

}  // namespace lsspca
