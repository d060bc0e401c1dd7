#include "lsspca/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsspca/linalg.hpp"

namespace lsspca {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::uncorrelated: return "uncorrelated";
    case Mode::correlated: return "correlated";
    case Mode::orthogonal: return "orthogonal";
  }
  return "?";
}

Mode mode_from_string(const std::string& name) {
  if (name == "uncorrelated") return Mode::uncorrelated;
  if (name == "correlated") return Mode::correlated;
  if (name == "orthogonal") return Mode::orthogonal;
  throw InputError("unknown mode: " + name);
}

CovarianceMatrix::CovarianceMatrix(Matrix entries, MatrixKind kind,
                                   std::vector<std::string> names,
                                   double psd_tolerance)
    : entries_(std::move(entries)), kind_(kind), names_(std::move(names)) {
  const auto p = entries_.rows();
  if (p == 0 || entries_.cols() != p) throw InputError("covariance matrix must be square and nonempty");
  if (!names_.empty() && static_cast<Eigen::Index>(names_.size()) != p)
    throw InputError("variable name count does not match dimension");

  const double scale = entries_.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j)
      if (std::abs(entries_(i, j) - entries_(j, i)) > 1e-10 * scale)
        throw AsymmetricMatrix(static_cast<int>(i), static_cast<int>(j));

  if (kind_ == MatrixKind::correlation)
    for (Eigen::Index i = 0; i < p; ++i)
      if (std::abs(entries_(i, i) - 1.0) > 1e-10)
        throw InputError("correlation matrix diagonal entry " + std::to_string(i) +
                         " is not 1");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_, Eigen::EigenvaluesOnly);
  const double lmax = eig.eigenvalues().maxCoeff();
  const double lmin = eig.eigenvalues().minCoeff();
  if (lmax > 0 && lmin < -psd_tolerance * lmax) throw NotPsd();
}

IndexSet::IndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 0) throw InputError("negative variable index");
    if (k > 0 && indices_[k] == indices_[k - 1])
      throw InputError("duplicate variable index " + std::to_string(indices_[k]));
  }
}

IndexSet IndexSet::full(int p) {
  std::vector<int> v(p);
  for (int i = 0; i < p; ++i) v[i] = i;
  return IndexSet(std::move(v));
}

bool IndexSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

IndexSet IndexSet::without(int i) const {
  std::vector<int> v;
  v.reserve(indices_.size());
  for (int x : indices_)
    if (x != i) v.push_back(x);
  IndexSet out;
  out.indices_ = std::move(v);
  return out;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (k) os << ",";
    os << indices_[k];
  }
  return os.str();
}

void apply_sign_convention(Vector& v) {
  int best = 0;
  double mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > mag + 1e-14) {
      mag = a;
      best = static_cast<int>(i);
    }
  }
  if (v[best] < 0) v = -v;
}

ComponentSet::ComponentSet(const CovarianceMatrix& source) : source_(source) {
  EigenResult eig = symmetric_eig(source.entries());
  pca_eigenvalues_ = eig.values;
}

void ComponentSet::add(SparseComponent component) {
  const double prev = cumulative_vexp_.empty() ? 0.0 : cumulative_vexp_.back();
  cumulative_vexp_.push_back(prev + component.vexp);
  components_.push_back(std::move(component));
}

Matrix ComponentSet::loadings_matrix() const {
  Matrix A(source_.dim(), size());
  for (int k = 0; k < size(); ++k) A.col(k) = components_[k].loadings;
  return A;
}

double ComponentSet::max_cross_covariance() const {
  double worst = 0.0;
  const Matrix& S = source_.entries();
  for (int j = 0; j < size(); ++j)
    for (int k = j + 1; k < size(); ++k)
      worst = std::max(worst, std::abs(components_[j].loadings.dot(S * components_[k].loadings)));
  return worst;
}

}  // namespace lsspca
