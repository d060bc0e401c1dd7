#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsspca/linalg.hpp"
#include "lsspca/types.hpp"
#include "oracles.hpp"

using namespace lsspca;

TEST_CASE("covariance matrix validation") {
  Matrix good(2, 2);
  good << 2.0, 0.5, 0.5, 1.0;
  CHECK_NOTHROW(CovarianceMatrix(good, MatrixKind::covariance));

  SUBCASE("asymmetry is rejected with the offending entry") {
    Matrix bad = good;
    bad(0, 1) = 0.6;
    CHECK_THROWS_AS(CovarianceMatrix(bad, MatrixKind::covariance), AsymmetricMatrix);
    try {
      CovarianceMatrix(bad, MatrixKind::covariance);
    } catch (const AsymmetricMatrix& e) {
      CHECK(e.row() == 0);
      CHECK(e.col() == 1);
    }
  }
  SUBCASE("correlation matrices need a unit diagonal") {
    CHECK_THROWS_AS(CovarianceMatrix(good, MatrixKind::correlation), InputError);
    Matrix corr(2, 2);
    corr << 1.0, 0.3, 0.3, 1.0;
    CHECK_NOTHROW(CovarianceMatrix(corr, MatrixKind::correlation));
  }
  SUBCASE("indefinite matrices are rejected unless the tolerance is relaxed") {
    Matrix indef(2, 2);
    indef << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
    CHECK_THROWS_AS(CovarianceMatrix(indef, MatrixKind::covariance), NotPsd);
    CHECK_NOTHROW(CovarianceMatrix(indef, MatrixKind::covariance, {}, 0.5));
  }
  SUBCASE("name count must match the dimension") {
    CHECK_THROWS_AS(CovarianceMatrix(good, MatrixKind::covariance, {"only-one"}), InputError);
  }
  SUBCASE("non-square input is rejected") {
    CHECK_THROWS_AS(CovarianceMatrix(Matrix::Zero(2, 3), MatrixKind::covariance), InputError);
  }
}

TEST_CASE("index sets") {
  IndexSet s(std::vector<int>{3, 1, 2});
  CHECK(s.indices() == std::vector<int>{1, 2, 3});
  CHECK(s.cardinality() == 3);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(0));
  CHECK(s.without(2).indices() == std::vector<int>{1, 3});
  CHECK(s.to_string() == "1,2,3");
  CHECK(IndexSet::full(3).indices() == std::vector<int>{0, 1, 2});
  CHECK(IndexSet(std::vector<int>{0, 2}) < IndexSet(std::vector<int>{0, 3}));
  CHECK(IndexSet(std::vector<int>{0}) < IndexSet(std::vector<int>{0, 1}));
  CHECK_THROWS_AS(IndexSet(std::vector<int>{1, 1}), InputError);
  CHECK_THROWS_AS(IndexSet(std::vector<int>{-1}), InputError);
}

TEST_CASE("sign convention") {
  Vector v(3);
  v << 0.1, -0.9, 0.2;
  apply_sign_convention(v);
  CHECK(v[1] == doctest::Approx(0.9));
  CHECK(v[0] == doctest::Approx(-0.1));

  // exact tie: the lowest index decides
  Vector t(2);
  t << -0.5, 0.5;
  apply_sign_convention(t);
  CHECK(t[0] == doctest::Approx(0.5));
  CHECK(t[1] == doctest::Approx(-0.5));
}

TEST_CASE("covariance from data") {
  DataMatrix data;
  data.entries.resize(4, 2);
  data.entries << 1.0, 2.0, 2.0, 4.5, 3.0, 6.0, 4.0, 9.5;

  SUBCASE("plain covariance uses the 1/n divisor") {
    CovarianceMatrix S = covariance_from_data(data, false);
    // hand-computed: means (2.5, 5.5); sum of squared deviations / 4
    CHECK(S.entries()(0, 0) == doctest::Approx(1.25));
    CHECK(S.entries()(1, 1) == doctest::Approx(7.375));
    CHECK(S.entries()(0, 1) == doctest::Approx(3.0));
    CHECK(S.kind() == MatrixKind::covariance);
  }
  SUBCASE("standardizing yields a correlation matrix with unit diagonal") {
    CovarianceMatrix R = covariance_from_data(data, true);
    CHECK(R.kind() == MatrixKind::correlation);
    CHECK(R.entries()(0, 0) == 1.0);
    CHECK(R.entries()(1, 1) == 1.0);
    CHECK(R.entries()(0, 1) ==
          doctest::Approx(3.0 / std::sqrt(1.25 * 7.375)));
  }
  SUBCASE("constant columns cannot be standardized") {
    data.entries.col(1).setConstant(3.0);
    CHECK_THROWS_AS(covariance_from_data(data, true), ZeroVarianceColumn);
  }
  SUBCASE("fewer than two rows is empty data") {
    data.entries.conservativeResize(1, 2);
    CHECK_THROWS_AS(covariance_from_data(data, false), EmptyData);
  }
}

TEST_CASE("symmetric eigendecomposition") {
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  EigenResult eig = symmetric_eig(m);
  CHECK(eig.values[0] == doctest::Approx(3.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  // reconstruction
  Matrix back = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-12);
  // sign convention on each column
  CHECK(eig.vectors(0, 0) > 0);

  Matrix ns(2, 2);
  ns << 1.0, 0.5, 0.4, 1.0;
  CHECK_THROWS_AS(symmetric_eig(ns), NotSymmetric);
}

TEST_CASE("pseudo-inverse satisfies the Penrose identities on a singular matrix") {
  Matrix m(3, 3);
  Vector u(3);
  u << 1.0, 2.0, -1.0;
  m = u * u.transpose();  // rank one
  Matrix pinv = pseudo_inverse(m);
  CHECK((m * pinv * m - m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((pinv * m * pinv - pinv).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((m * pinv - (m * pinv).transpose()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("symmetric square root") {
  Matrix S = oracles::random_psd(7, 5);
  Matrix R = symmetric_sqrt(S);
  CHECK((R * R - S).cwiseAbs().maxCoeff() < 1e-10);

  Matrix indef(2, 2);
  indef << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(symmetric_sqrt(indef), NotPsd);

  // a tiny negative eigenvalue from roundoff is clamped, not fatal
  Matrix tiny = Matrix::Zero(2, 2);
  tiny(0, 0) = 1.0;
  tiny(1, 1) = -1e-12;
  CHECK_NOTHROW(symmetric_sqrt(tiny));
}

TEST_CASE("principal submatrix gather") {
  Matrix m(3, 3);
  m << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  IndexSet ind(std::vector<int>{0, 2});
  Matrix g = gather(m, ind);
  CHECK(g(0, 0) == 1);
  CHECK(g(0, 1) == 3);
  CHECK(g(1, 1) == 9);
  Matrix gc = gather_cols(m, ind);
  CHECK(gc.cols() == 2);
  CHECK(gc(1, 1) == 6);
}

TEST_CASE("component set bookkeeping") {
  Matrix m = oracles::random_psd(11, 4);
  CovarianceMatrix S(m, MatrixKind::covariance);
  ComponentSet set(S);
  CHECK(set.empty());
  CHECK(set.pca_eigenvalues().size() == 4);
  CHECK(set.pca_eigenvalues().sum() == doctest::Approx(S.trace()));

  SparseComponent a;
  a.loadings = Vector::Unit(4, 0);
  a.support = IndexSet(std::vector<int>{0});
  a.vexp = 1.5;
  set.add(a);
  SparseComponent b;
  b.loadings = Vector::Unit(4, 2);
  b.support = IndexSet(std::vector<int>{2});
  b.vexp = 0.5;
  set.add(b);

  CHECK(set.size() == 2);
  CHECK(set.cumulative_vexp()[1] == doctest::Approx(2.0));
  CHECK(set.loadings_matrix().cols() == 2);
  CHECK(set.max_cross_covariance() == doctest::Approx(std::abs(m(0, 2))));
}
