#include "lsspca/solver.hpp"

#include <cmath>

namespace lsspca {

namespace {

constexpr double kConditionLimit = 1e12;

struct SupportFactors {
  Matrix inv;       // D^-1
  Matrix inv_sqrt;  // D^-1/2
};

// Eigendecomposition of D = S[ind,ind] with the condition-number guard.
SupportFactors factor_support(const Matrix& D, const IndexSet& ind) {
  EigenResult eig = symmetric_eig(D);
  const double lmax = eig.values[0];
  const double lmin = eig.values[eig.values.size() - 1];
  if (lmin <= 0 || lmax / lmin > kConditionLimit) throw SingularSupport(ind.to_string());
  Vector inv = eig.values.cwiseInverse();
  Vector inv_sqrt = inv.cwiseSqrt();
  return {eig.vectors * inv.asDiagonal() * eig.vectors.transpose(),
          eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose()};
}

// Embed the gathered solution, normalize, fix the sign, fill statistics.
SparseComponent finalize(const SolveContext& ctx, const IndexSet& ind, Vector gathered,
                         double vexp) {
  const Matrix& S = ctx.covariance().entries();
  Vector a = Vector::Zero(S.rows());
  const auto& idx = ind.indices();
  for (size_t k = 0; k < idx.size(); ++k) a[idx[k]] = gathered[static_cast<Eigen::Index>(k)];
  a /= a.norm();
  apply_sign_convention(a);

  SparseComponent comp;
  comp.loadings = a;
  comp.support = ind;
  comp.vexp = vexp;
  comp.variance = a.dot(S * a);
  comp.mode = ctx.mode();
  comp.order = ctx.order();
  return comp;
}

SparseComponent solve_first(const SolveContext& ctx, const IndexSet& ind) {
  const Matrix D = gather(ctx.covariance().entries(), ind);
  const Matrix N = gather(ctx.squared(), ind);
  SupportFactors f = factor_support(D, ind);
  EigenResult eig = symmetric_eig(f.inv_sqrt * N * f.inv_sqrt);
  return finalize(ctx, ind, f.inv_sqrt * eig.vectors.col(0), eig.values[0]);
}

// Square root of a projector-style PSD matrix whose scale is set by D^-1;
// near-zero matrices (fully binding constraints) must not trip the PSD check.
Matrix projector_sqrt(const Matrix& K, double scale) {
  EigenResult eig = symmetric_eig(K);
  Vector root = eig.values;
  for (Eigen::Index k = 0; k < root.size(); ++k) {
    if (root[k] < -1e-8 * scale) throw NotPsd();
    root[k] = std::sqrt(std::max(root[k], 0.0));
  }
  return eig.vectors * root.asDiagonal() * eig.vectors.transpose();
}

// Largest generalized eigenvalue of (N, B) restricted to the range of B.
double pencil_max(const Matrix& N, const Matrix& B) {
  EigenResult eig = symmetric_eig(B);
  const double lmax = eig.values[0];
  if (lmax <= 0) return 0.0;
  Vector inv_sqrt = eig.values;
  for (Eigen::Index k = 0; k < inv_sqrt.size(); ++k)
    inv_sqrt[k] = inv_sqrt[k] > 1e-10 * lmax ? 1.0 / std::sqrt(inv_sqrt[k]) : 0.0;
  const Matrix W = eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose();
  EigenResult top = symmetric_eig(W * N * W);
  return std::max(top.values[0], 0.0);
}

}  // namespace

SolveContext SolveContext::initial(CovarianceMatrix S, Mode mode) {
  SolveContext ctx;
  ctx.S_ = std::make_shared<const CovarianceMatrix>(std::move(S));
  ctx.S2_ = std::make_shared<const Matrix>(ctx.S_->entries() * ctx.S_->entries());
  ctx.mode_ = mode;
  ctx.A_.resize(ctx.S_->dim(), 0);
  ctx.AS_.resize(0, ctx.S_->dim());
  return ctx;
}

SolveContext SolveContext::with(const SparseComponent& accepted) const {
  SolveContext ctx = *this;
  ctx.previous_.push_back(accepted);
  ctx.rebuild_caches();
  return ctx;
}

void SolveContext::rebuild_caches() {
  const int p = S_->dim();
  const int k = previous_count();
  A_.resize(p, k);
  for (int j = 0; j < k; ++j) A_.col(j) = previous_[j].loadings;
  AS_ = A_.transpose() * S_->entries();

  if (mode_ != Mode::uncorrelated && k > 0) {
    const Matrix& S = S_->entries();
    const Matrix G = A_.transpose() * S * A_;  // components' covariance
    const Matrix Z = Matrix::Identity(p, p) - A_ * G.ldlt().solve(AS_);
    Matrix Sj = S * Z;
    Sj = ((Sj + Sj.transpose()) / 2).eval();
    deflated_ = std::make_shared<const Matrix>(std::move(Sj));
    deflated2_ = std::make_shared<const Matrix>(*deflated_ * *deflated_);
  } else {
    deflated_.reset();
    deflated2_.reset();
  }
}

double variance_explained(const CovarianceMatrix& S, const Vector& a) {
  const Vector Sa = S.entries() * a;
  const double denom = a.dot(Sa);
  if (denom <= 1e-12 * S.trace()) throw DegenerateComponent("a'Sa is numerically zero");
  return Sa.squaredNorm() / denom;
}

double approx_variance_explained(const SolveContext& ctx, const Vector& a) {
  if (ctx.mode() != Mode::correlated)
    throw InputError("approx_variance_explained requires correlated mode");
  if (!ctx.has_deflated()) return variance_explained(ctx.covariance(), a);
  const double denom = a.dot(ctx.covariance().entries() * a);
  if (denom <= 1e-12 * ctx.covariance().trace())
    throw DegenerateComponent("a'Sa is numerically zero");
  return a.dot(ctx.deflated_squared() * a) / denom;
}

double incremental_variance_explained(const SolveContext& ctx, const Vector& a) {
  if (!ctx.has_deflated()) return variance_explained(ctx.covariance(), a);
  const double denom = a.dot(ctx.deflated() * a);
  if (denom <= 1e-12 * ctx.covariance().trace())
    throw DegenerateComponent("residual variance of the component is numerically zero");
  return a.dot(ctx.deflated_squared() * a) / denom;
}

SparseComponent first_component(const CovarianceMatrix& S, const IndexSet& ind) {
  return solve_first(SolveContext::initial(S, Mode::uncorrelated), ind);
}

SparseComponent uncorrelated_component(const SolveContext& ctx, const IndexSet& ind) {
  const int c = ind.cardinality();
  const int j = ctx.order();
  if (c < j) throw CardinalityTooSmall(c, j);
  if (ctx.previous_count() == 0) return solve_first(ctx, ind);

  const Matrix D = gather(ctx.covariance().entries(), ind);
  const Matrix N = gather(ctx.squared(), ind);
  SupportFactors f = factor_support(D, ind);
  const Matrix R = gather_cols(ctx.prev_cov_rows(), ind);  // (j-1) x c

  // K = C D^-1, symmetric PSD; range(K) is the feasible subspace
  const Matrix K = f.inv - f.inv * R.transpose() * pseudo_inverse(R * f.inv * R.transpose()) * R * f.inv;
  const Matrix Ks = projector_sqrt((K + K.transpose()) / 2, f.inv.cwiseAbs().maxCoeff());
  EigenResult eig = symmetric_eig(Ks * N * Ks);
  const double phi = eig.values[0];
  Vector gathered = Ks * eig.vectors.col(0);
  if (phi <= 1e-12 * ctx.covariance().trace() || gathered.norm() <= 1e-12)
    throw InfeasibleConstraints("no direction uncorrelated with the previous components on support {" +
                                ind.to_string() + "}");
  return finalize(ctx, ind, std::move(gathered), phi);
}

SparseComponent correlated_component(const SolveContext& ctx, const IndexSet& ind) {
  if (ctx.previous_count() == 0) return solve_first(ctx, ind);

  const Matrix D = gather(ctx.covariance().entries(), ind);
  const Matrix N = gather(ctx.deflated_squared(), ind);
  SupportFactors f = factor_support(D, ind);
  EigenResult eig = symmetric_eig(f.inv_sqrt * N * f.inv_sqrt);
  const double phi = eig.values[0];
  if (phi <= 1e-12 * ctx.covariance().trace())
    throw DegenerateComponent("deflated objective is numerically zero on support {" +
                              ind.to_string() + "}");
  SparseComponent comp = finalize(ctx, ind, f.inv_sqrt * eig.vectors.col(0), phi);
  // the eigenvalue is the Eq-12 surrogate; report the true incremental value
  comp.vexp = incremental_variance_explained(ctx, comp.loadings);
  return comp;
}

SparseComponent orthogonal_loadings_component(const SolveContext& ctx, const IndexSet& ind) {
  if (ctx.previous_count() == 0) return solve_first(ctx, ind);

  const Matrix D = gather(ctx.covariance().entries(), ind);
  const Matrix N = gather(ctx.deflated_squared(), ind);
  SupportFactors f = factor_support(D, ind);
  const Matrix JA = gather_cols(ctx.prev_loadings().transpose(), ind).transpose();  // c x (j-1)

  // pseudo-inverse so vacuous constraints (e.g. disjoint supports) drop out
  const Matrix G = JA.transpose() * f.inv * JA;
  const Matrix K = f.inv - f.inv * JA * pseudo_inverse(G) * JA.transpose() * f.inv;
  const Matrix Ks = projector_sqrt((K + K.transpose()) / 2, f.inv.cwiseAbs().maxCoeff());
  EigenResult eig = symmetric_eig(Ks * N * Ks);
  const double phi = eig.values[0];
  Vector gathered = Ks * eig.vectors.col(0);
  if (phi <= 1e-12 * ctx.covariance().trace() || gathered.norm() <= 1e-12)
    throw InfeasibleConstraints("no direction orthogonal to the previous loadings on support {" +
                                ind.to_string() + "}");
  SparseComponent comp = finalize(ctx, ind, std::move(gathered), phi);
  comp.vexp = incremental_variance_explained(ctx, comp.loadings);
  return comp;
}

SparseComponent solve_on_support(const SolveContext& ctx, const IndexSet& ind) {
  switch (ctx.mode()) {
    case Mode::uncorrelated: return uncorrelated_component(ctx, ind);
    case Mode::correlated: return correlated_component(ctx, ind);
    case Mode::orthogonal: return orthogonal_loadings_component(ctx, ind);
  }
  throw InputError("unknown mode");
}

double support_bound(const SolveContext& ctx, const IndexSet& ind) {
  if (ctx.mode() == Mode::uncorrelated || ctx.previous_count() == 0) {
    // the constrained maximum itself; monotone under support nesting
    return solve_on_support(ctx, ind).vexp;
  }
  // correlated / orthogonal chains: unconstrained maximum of the true
  // incremental Vexp over the support, which dominates every subset's leaf
  return pencil_max(gather(ctx.deflated_squared(), ind), gather(ctx.deflated(), ind));
}

ComponentSet full_pca(const CovarianceMatrix& S, int d) {
  if (d < 1 || d > S.dim()) throw InputError("component count out of range");
  EigenResult eig = symmetric_eig(S.entries());
  ComponentSet set(S);
  for (int j = 0; j < d; ++j) {
    SparseComponent comp;
    comp.loadings = eig.vectors.col(j);
    comp.support = IndexSet::full(S.dim());
    comp.vexp = eig.values[j];
    comp.variance = eig.values[j];
    comp.mode = Mode::uncorrelated;
    comp.order = j + 1;
    set.add(std::move(comp));
  }
  return set;
}

SparseComponent submatrix_pc(const CovarianceMatrix& S, const IndexSet& ind) {
  if (ind.cardinality() < 1) throw InputError("empty support");
  EigenResult eig = symmetric_eig(gather(S.entries(), ind));
  SolveContext ctx = SolveContext::initial(S, Mode::uncorrelated);
  SparseComponent comp = finalize(ctx, ind, eig.vectors.col(0), 0.0);
  comp.vexp = variance_explained(S, comp.loadings);
  comp.variance = eig.values[0];
  return comp;
}

}  // namespace lsspca
