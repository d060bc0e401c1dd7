#pragma once

#include "lsspca/types.hpp"

namespace lsspca {

/// S = (1/n) X'X after mean-centering; unit-variance scaling when standardize.
CovarianceMatrix covariance_from_data(const DataMatrix& data, bool standardize);

/// Full spectrum of a symmetric matrix, eigenvalues descending,
/// deterministic vector signs. Throws NotSymmetric.
EigenResult symmetric_eig(const Matrix& m);

/// Moore-Penrose inverse through the eigendecomposition; eigenvalues
/// <= 1e-10 * lambda_max count as zero.
Matrix pseudo_inverse(const Matrix& m);

/// Symmetric square root; eigenvalues in [-1e-8*lambda_max, 0) are clamped,
/// anything below throws NotPsd.
Matrix symmetric_sqrt(const Matrix& m);

/// Rows/columns of m gathered on the index set.
Matrix gather(const Matrix& m, const IndexSet& ind);

/// Columns of m gathered on the index set.
Matrix gather_cols(const Matrix& m, const IndexSet& ind);

}  // namespace lsspca
