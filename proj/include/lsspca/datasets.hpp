#pragma once

#include <string>

#include "lsspca/types.hpp"

namespace lsspca {

struct Fixture {
  std::string name;
  CovarianceMatrix matrix;
  std::string provenance;
};

/// The 10x10 correlation matrix exactly as published by Zou et al. (2006).
/// Note: the printed matrix is slightly indefinite; see zou_analytic() for
/// the generative-model covariance it approximates.
Fixture zou_table1();

/// Population covariance of the three-factor generative model behind the
/// Zou synthetic data (V1 ~ N(0,290), V2 ~ N(0,300), V3 = -0.3 V1 + 0.925 V2 + e,
/// unit-variance independent noise on each manifest variable).
Fixture zou_analytic();

/// Correlation matrix implied by a covariance matrix.
CovarianceMatrix to_correlation(const CovarianceMatrix& cov);

/// Jeffers (1967) Pitprops 13x13 correlation matrix.
Fixture pitprops();

/// Fixture lookup by CLI key: "zou", "zou-analytic", "pitprops".
Fixture fixture_by_name(const std::string& key);

CovarianceMatrix read_matrix_csv(const std::string& path, MatrixKind kind);
CovarianceMatrix read_data_csv(const std::string& path, bool standardize);

/// Full-precision writer (17 significant digits); round-trips bit-exactly
/// through read_matrix_csv.
void write_matrix_csv(const std::string& path, const CovarianceMatrix& m);

}  // namespace lsspca
