#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "lsspca/errors.hpp"

namespace lsspca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class MatrixKind { covariance, correlation };

enum class Mode { uncorrelated, correlated, orthogonal };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Symmetric PSD input matrix S. Immutable after construction; validation
/// happens in the constructor (symmetry, PSD up to a relative tolerance,
/// unit diagonal for correlation matrices).
class CovarianceMatrix {
 public:
  CovarianceMatrix(Matrix entries, MatrixKind kind,
                   std::vector<std::string> names = {},
                   double psd_tolerance = 1e-8);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  MatrixKind kind() const { return kind_; }
  const std::vector<std::string>& names() const { return names_; }
  double trace() const { return entries_.trace(); }

 private:
  Matrix entries_;
  MatrixKind kind_;
  std::vector<std::string> names_;
};

/// Mean-centers in place; covariance_from_data builds one of these first.
struct DataMatrix {
  Matrix entries;  // n x p
  std::vector<std::string> column_names;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

/// Strictly increasing list of variable indices in [0, p).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> indices);
  static IndexSet full(int p);

  int cardinality() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;
  IndexSet without(int i) const;
  std::string to_string() const;

  bool operator==(const IndexSet& other) const { return indices_ == other.indices_; }
  // lexicographic, used for deterministic tie-breaking
  bool operator<(const IndexSet& other) const { return indices_ < other.indices_; }

 private:
  std::vector<int> indices_;
};

struct SparseComponent {
  Vector loadings;    // length p, unit L2 norm, zeros off support
  IndexSet support;
  double vexp = 0.0;      // variance explained (true incremental for correlated chains)
  double variance = 0.0;  // a' S a
  Mode mode = Mode::uncorrelated;
  int order = 1;          // 1-based position in its chain
};

/// Ordered chain of components sharing one covariance matrix.
class ComponentSet {
 public:
  explicit ComponentSet(const CovarianceMatrix& source);

  void add(SparseComponent component);

  const CovarianceMatrix& source() const { return source_; }
  const std::vector<SparseComponent>& components() const { return components_; }
  const std::vector<double>& cumulative_vexp() const { return cumulative_vexp_; }
  const Vector& pca_eigenvalues() const { return pca_eigenvalues_; }
  int size() const { return static_cast<int>(components_.size()); }
  bool empty() const { return components_.empty(); }

  /// p x k matrix of loadings, one column per component.
  Matrix loadings_matrix() const;

  /// max |a_j' S a_k| over pairs, for the uncorrelatedness invariant.
  double max_cross_covariance() const;

 private:
  CovarianceMatrix source_;
  std::vector<SparseComponent> components_;
  std::vector<double> cumulative_vexp_;
  Vector pca_eigenvalues_;  // descending
};

struct EigenResult {
  Vector values;   // descending
  Matrix vectors;  // column k pairs with values[k], orthonormal, sign-fixed
};

/// Largest-magnitude entry positive; ties resolved toward the lowest index.
void apply_sign_convention(Vector& v);

}  // namespace lsspca
