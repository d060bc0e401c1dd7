#include "lsspca/datasets.hpp"

#include "lsspca/linalg.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lsspca {

namespace {

std::vector<std::string> numbered_names(const std::string& prefix, int p) {
  std::vector<std::string> names;
  for (int i = 1; i <= p; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// expands a strictly-lower-triangle listing (row by row) plus a unit diagonal
Matrix from_lower_triangle(int p, const std::vector<double>& lower) {
  Matrix m = Matrix::Identity(p, p);
  size_t k = 0;
  for (int i = 1; i < p; ++i)
    for (int j = 0; j < i; ++j) {
      m(i, j) = lower[k];
      m(j, i) = lower[k];
      ++k;
    }
  return m;
}

struct CsvTable {
  std::vector<std::string> header;  // empty when the first row is numeric
  std::vector<std::vector<double>> rows;
};

bool parse_number(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  return *end == '\0';
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  CsvTable table;
  std::string line;
  int line_no = 0;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_fields(line);

    if (table.rows.empty() && table.header.empty() && line_no == 1) {
      // a non-numeric first row is a header
      double ignored;
      bool numeric = true;
      for (const std::string& f : fields)
        if (!parse_number(f, ignored)) {
          numeric = false;
          break;
        }
      if (!numeric) {
        table.header = fields;
        width = fields.size();
        continue;
      }
    }

    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw ParseError(line_no, static_cast<int>(fields.size()),
                       "expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      double v;
      if (!parse_number(fields[c], v))
        throw ParseError(line_no, static_cast<int>(c + 1), "not a number: '" + fields[c] + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw EmptyData();
  return table;
}

Matrix to_matrix(const CsvTable& table) {
  Matrix m(table.rows.size(), table.rows[0].size());
  for (size_t r = 0; r < table.rows.size(); ++r)
    for (size_t c = 0; c < table.rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = table.rows[r][c];
  return m;
}

}  // namespace

Fixture zou_table1() {
  const int p = 10;
  Matrix m = Matrix::Identity(p, p);
  auto block = [&](int lo, int hi, int lo2, int hi2, double value) {
    for (int i = lo; i <= hi; ++i)
      for (int j = lo2; j <= hi2; ++j)
        if (i != j) m(i, j) = m(j, i) = value;
  };
  block(0, 3, 0, 3, 0.996);   // the four variables driven by the first factor
  block(4, 7, 4, 7, 0.997);   // the four driven by the second
  block(0, 3, 8, 9, -0.3);
  block(4, 7, 8, 9, 0.95);
  block(8, 9, 8, 9, 0.948);
  // the printed matrix is slightly indefinite, so the PSD check is relaxed
  return {"zou",
          CovarianceMatrix(std::move(m), MatrixKind::correlation, numbered_names("x", p), 0.005),
          "Zou, Hastie & Tibshirani (2006) synthetic-data correlations, as printed"};
}

Fixture zou_analytic() {
  const int p = 10;
  const double v1 = 290.0, v2 = 300.0;
  const double v3 = 0.3 * 0.3 * v1 + 0.925 * 0.925 * v2 + 1.0;
  Matrix m(p, p);
  auto block = [&](int lo, int hi, int lo2, int hi2, double value) {
    for (int i = lo; i <= hi; ++i)
      for (int j = lo2; j <= hi2; ++j) m(i, j) = m(j, i) = value;
  };
  block(0, 3, 0, 3, v1);
  block(4, 7, 4, 7, v2);
  block(8, 9, 8, 9, v3);
  block(0, 3, 4, 7, 0.0);
  block(0, 3, 8, 9, -0.3 * v1);
  block(4, 7, 8, 9, 0.925 * v2);
  for (int i = 0; i < p; ++i) m(i, i) += 1.0;  // unit-variance measurement noise
  return {"zou-analytic",
          CovarianceMatrix(std::move(m), MatrixKind::covariance, numbered_names("x", p)),
          "population covariance of the three-factor model behind the Zou synthetic data"};
}

CovarianceMatrix to_correlation(const CovarianceMatrix& cov) {
  const Matrix& S = cov.entries();
  const int p = cov.dim();
  Vector d(p);
  for (int i = 0; i < p; ++i) {
    if (S(i, i) <= 0) throw ZeroVarianceColumn(i);
    d[i] = 1.0 / std::sqrt(S(i, i));
  }
  Matrix R = d.asDiagonal() * S * d.asDiagonal();
  R = ((R + R.transpose()) / 2).eval();
  for (int i = 0; i < p; ++i) R(i, i) = 1.0;
  return CovarianceMatrix(std::move(R), MatrixKind::correlation, cov.names());
}

Fixture pitprops() {
  const std::vector<double> lower = {
      0.954,
      0.364, 0.297,
      0.342, 0.284, 0.882,
      -0.129, -0.118, -0.148, 0.220,
      0.313, 0.291, 0.153, 0.381, 0.364,
      0.496, 0.503, -0.029, 0.174, 0.296, 0.813,
      0.424, 0.419, -0.054, -0.059, 0.004, 0.090, 0.372,
      0.592, 0.648, 0.125, 0.137, -0.039, 0.211, 0.465, 0.482,
      0.545, 0.569, -0.081, -0.014, 0.037, 0.274, 0.679, 0.557, 0.526,
      0.084, 0.076, 0.162, 0.097, 0.091, -0.036, -0.113, 0.061, 0.085, -0.319,
      -0.019, -0.036, 0.220, 0.169, -0.145, 0.024, -0.232, -0.357, -0.127, -0.368, 0.029,
      0.134, 0.144, 0.126, 0.015, -0.208, -0.329, -0.424, -0.202, -0.076, -0.291, 0.007, 0.184};
  std::vector<std::string> names = {"topdiam", "length", "moist", "testsg", "ovensg",
                                    "ringtop", "ringbut", "bowmax", "bowdist", "whorls",
                                    "clear", "knots", "diaknot"};
  return {"pitprops",
          CovarianceMatrix(from_lower_triangle(13, lower), MatrixKind::correlation,
                           std::move(names)),
          "Jeffers (1967) correlations between thirteen pitprop measurements"};
}

Fixture fixture_by_name(const std::string& key) {
  if (key == "zou") return zou_table1();
  if (key == "zou-analytic") return zou_analytic();
  if (key == "pitprops") return pitprops();
  throw InputError("unknown fixture: " + key + " (expected zou, zou-analytic, or pitprops)");
}

CovarianceMatrix read_matrix_csv(const std::string& path, MatrixKind kind) {
  CsvTable table = read_csv(path);
  Matrix m = to_matrix(table);
  if (m.rows() != m.cols())
    throw DimensionMismatch("matrix CSV must be square, got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  return CovarianceMatrix(std::move(m), kind, table.header);
}

CovarianceMatrix read_data_csv(const std::string& path, bool standardize) {
  CsvTable table = read_csv(path);
  DataMatrix data{to_matrix(table), table.header};
  return covariance_from_data(data, standardize);
}

void write_matrix_csv(const std::string& path, const CovarianceMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  const auto& names = m.names();
  if (!names.empty()) {
    for (size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << "\n";
  }
  char buffer[64];
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) {
      std::snprintf(buffer, sizeof buffer, "%.17g", m.entries()(r, c));
      out << (c ? "," : "") << buffer;
    }
    out << "\n";
  }
}

}  // namespace lsspca
