#include "lsspca/linalg.hpp"

#include <cmath>

namespace lsspca {

CovarianceMatrix covariance_from_data(const DataMatrix& data, bool standardize) {
  const int n = data.rows();
  const int p = data.cols();
  if (n < 2) throw EmptyData();

  Matrix X = data.entries;
  X.rowwise() -= X.colwise().mean();

  if (standardize) {
    for (int j = 0; j < p; ++j) {
      const double sd = std::sqrt(X.col(j).squaredNorm() / n);
      const double scale = X.col(j).cwiseAbs().maxCoeff();
      if (sd <= 1e-12 * std::max(scale, 1.0)) throw ZeroVarianceColumn(j);
      X.col(j) /= sd;
    }
  }

  Matrix S = (X.transpose() * X) / n;  // 1/n divisor, not 1/(n-1)
  S = ((S + S.transpose()) / 2).eval();
  if (standardize)
    for (int j = 0; j < p; ++j) S(j, j) = 1.0;
  return CovarianceMatrix(std::move(S),
                          standardize ? MatrixKind::correlation : MatrixKind::covariance,
                          data.column_names);
}

EigenResult symmetric_eig(const Matrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1e-300))
    throw NotSymmetric();

  Eigen::SelfAdjointEigenSolver<Matrix> eig((m + m.transpose()) / 2);
  const Eigen::Index p = m.rows();
  EigenResult out;
  out.values.resize(p);
  out.vectors.resize(p, p);
  // Eigen sorts ascending; flip to descending
  for (Eigen::Index k = 0; k < p; ++k) {
    out.values[k] = eig.eigenvalues()[p - 1 - k];
    Vector v = eig.eigenvectors().col(p - 1 - k);
    apply_sign_convention(v);
    out.vectors.col(k) = v;
  }
  return out;
}

Matrix pseudo_inverse(const Matrix& m) {
  EigenResult eig = symmetric_eig(m);
  const double lmax = eig.values.size() ? std::abs(eig.values[0]) : 0.0;
  Vector inv = eig.values;
  for (Eigen::Index k = 0; k < inv.size(); ++k)
    inv[k] = (std::abs(inv[k]) > 1e-10 * lmax && lmax > 0) ? 1.0 / inv[k] : 0.0;
  return eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
}

Matrix symmetric_sqrt(const Matrix& m) {
  EigenResult eig = symmetric_eig(m);
  const double lmax = eig.values.size() ? eig.values.maxCoeff() : 0.0;
  Vector root = eig.values;
  for (Eigen::Index k = 0; k < root.size(); ++k) {
    if (root[k] < -1e-8 * std::max(lmax, 0.0)) throw NotPsd();
    root[k] = std::sqrt(std::max(root[k], 0.0));
  }
  return eig.vectors * root.asDiagonal() * eig.vectors.transpose();
}

Matrix gather(const Matrix& m, const IndexSet& ind) {
  const auto& idx = ind.indices();
  Matrix out(idx.size(), idx.size());
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c) out(r, c) = m(idx[r], idx[c]);
  return out;
}

Matrix gather_cols(const Matrix& m, const IndexSet& ind) {
  const auto& idx = ind.indices();
  Matrix out(m.rows(), idx.size());
  for (size_t c = 0; c < idx.size(); ++c) out.col(c) = m.col(idx[c]);
  return out;
}

}  // namespace lsspca
