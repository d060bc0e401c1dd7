#pragma once

#include <stdexcept>
#include <string>

namespace lsspca {

// Base for all library errors. InputError maps to CLI exit code 2,
// NumericalError to 3, BudgetExceeded to 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class EmptyData : public InputError {
 public:
  EmptyData() : InputError("data matrix needs at least 2 rows") {}
};

class ZeroVarianceColumn : public InputError {
 public:
  explicit ZeroVarianceColumn(int column)
      : InputError("column " + std::to_string(column) +
                   " has zero variance, cannot standardize"),
        column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

class NotSymmetric : public InputError {
 public:
  NotSymmetric() : InputError("matrix is not symmetric within tolerance") {}
};

class AsymmetricMatrix : public InputError {
 public:
  AsymmetricMatrix(int row, int col)
      : InputError("matrix entry (" + std::to_string(row) + "," +
                    std::to_string(col) + ") breaks symmetry"),
        row_(row),
        col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_, col_;
};

class NotPsd : public InputError {
 public:
  NotPsd() : InputError("matrix is not positive semi-definite within tolerance") {}
};

class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& what)
      : InputError("parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class SingularSupport : public NumericalError {
 public:
  explicit SingularSupport(const std::string& support)
      : NumericalError("support {" + support + "} is singular or ill-conditioned") {}
};

class CardinalityTooSmall : public InputError {
 public:
  CardinalityTooSmall(int cardinality, int order)
      : InputError("cardinality " + std::to_string(cardinality) +
                   " < component order " + std::to_string(order) +
                   ": uncorrelatedness cannot be enforced"),
        cardinality_(cardinality),
        order_(order) {}
  int cardinality() const { return cardinality_; }
  int order() const { return order_; }

 private:
  int cardinality_, order_;
};

class InfeasibleConstraints : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateComponent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StartSetInfeasible : public InputError {
 public:
  using InputError::InputError;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(double subsets)
      : Error("subset count " + std::to_string(subsets) + " exceeds the search budget") {}
};

}  // namespace lsspca
