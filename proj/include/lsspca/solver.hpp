#pragma once

#include <memory>

#include "lsspca/linalg.hpp"
#include "lsspca/types.hpp"

namespace lsspca {

/// Immutable solve state for one component chain: the covariance matrix,
/// the accepted previous components, and the cached products each closed-form
/// solution needs. Rebuilt (never mutated) after each accepted component.
class SolveContext {
 public:
  static SolveContext initial(CovarianceMatrix S, Mode mode);

  /// Context extended by one accepted component; recomputes the deflated
  /// matrix from scratch.
  SolveContext with(const SparseComponent& accepted) const;

  const CovarianceMatrix& covariance() const { return *S_; }
  Mode mode() const { return mode_; }
  int previous_count() const { return static_cast<int>(previous_.size()); }
  int order() const { return previous_count() + 1; }
  const std::vector<SparseComponent>& previous() const { return previous_; }

  const Matrix& squared() const { return *S2_; }          // S*S
  const Matrix& prev_loadings() const { return A_; }      // p x (j-1)
  const Matrix& prev_cov_rows() const { return AS_; }     // A' S, (j-1) x p
  bool has_deflated() const { return deflated_ != nullptr; }
  const Matrix& deflated() const { return *deflated_; }           // S_j = S Z_j
  const Matrix& deflated_squared() const { return *deflated2_; }  // S_j S_j

 private:
  SolveContext() = default;
  void rebuild_caches();

  std::shared_ptr<const CovarianceMatrix> S_;
  std::shared_ptr<const Matrix> S2_;
  Mode mode_ = Mode::uncorrelated;
  std::vector<SparseComponent> previous_;
  Matrix A_;   // p x (j-1)
  Matrix AS_;  // (j-1) x p
  std::shared_ptr<const Matrix> deflated_;
  std::shared_ptr<const Matrix> deflated2_;
};

/// Vexp(a) = (a'SSa)/(a'Sa). Scale invariant in a.
double variance_explained(const CovarianceMatrix& S, const Vector& a);

/// The deflated surrogate (a'S_j S_j a)/(a'Sa); equals variance_explained
/// while the chain is empty. Requires correlated mode.
double approx_variance_explained(const SolveContext& ctx, const Vector& a);

/// True incremental variance explained of a on top of the chain (extra sum
/// of squares): (a'S_j S_j a)/(a'S_j a).
double incremental_variance_explained(const SolveContext& ctx, const Vector& a);

SparseComponent first_component(const CovarianceMatrix& S, const IndexSet& ind);
SparseComponent uncorrelated_component(const SolveContext& ctx, const IndexSet& ind);
SparseComponent correlated_component(const SolveContext& ctx, const IndexSet& ind);
SparseComponent orthogonal_loadings_component(const SolveContext& ctx, const IndexSet& ind);

/// Dispatch on ctx.mode(); first component of any mode is first_component.
SparseComponent solve_on_support(const SolveContext& ctx, const IndexSet& ind);

/// Upper bound on the best objective attainable by any component supported
/// on a subset of ind; monotone under support nesting. Used by the search.
double support_bound(const SolveContext& ctx, const IndexSet& ind);

ComponentSet full_pca(const CovarianceMatrix& S, int d);

/// Top eigenvector of the principal submatrix, embedded in length p.
SparseComponent submatrix_pc(const CovarianceMatrix& S, const IndexSet& ind);

}  // namespace lsspca
