#include "lsspca/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace lsspca {

namespace {

std::string fixed1(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

std::string full_precision(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void pad(std::ostringstream& os, const std::string& s, int width) {
  os << std::setw(width) << s;
}

}  // namespace

SummaryTable summarize(const ComponentSet& set) {
  if (set.empty()) throw InputError("cannot summarize an empty component set");

  SummaryTable table;
  table.total_variance = set.source().trace();
  table.source_dim = set.source().dim();
  table.source_fingerprint = set.source().entries().norm();

  double pca_cum = 0.0;
  for (int j = 0; j < set.size(); ++j) {
    const SparseComponent& comp = set.components()[j];
    pca_cum += set.pca_eigenvalues()[j];

    SummaryRow row;
    row.component = j + 1;
    row.pve = 100.0 * comp.vexp / table.total_variance;
    row.pcve = 100.0 * set.cumulative_vexp()[j] / table.total_variance;
    row.prcve = 100.0 * set.cumulative_vexp()[j] / pca_cum;
    row.card = comp.support.cardinality();

    double min_abs = std::numeric_limits<double>::infinity();
    double sum_abs = 0.0;
    for (int i : comp.support.indices()) {
      min_abs = std::min(min_abs, std::abs(comp.loadings[i]));
      sum_abs += std::abs(comp.loadings[i]);
    }
    row.min_load = min_abs;
    row.min_pcont = 100.0 * min_abs / sum_abs;
    row.variance = comp.variance;
    table.rows.push_back(row);
  }
  return table;
}

std::string render_text(const SummaryTable& table) {
  std::ostringstream os;
  pad(os, "Comp", 6);
  pad(os, "PVE", 8);
  pad(os, "PCVE", 8);
  pad(os, "PRCVE", 8);
  pad(os, "Card", 6);
  pad(os, "MinLoad", 9);
  pad(os, "MinPCont", 10);
  pad(os, "Variance", 10);
  os << "\n";
  for (const SummaryRow& r : table.rows) {
    pad(os, std::to_string(r.component), 6);
    pad(os, fixed1(r.pve), 8);
    pad(os, fixed1(r.pcve), 8);
    pad(os, fixed1(r.prcve), 8);
    pad(os, std::to_string(r.card), 6);
    {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << r.min_load;
      pad(os, cell.str(), 9);
    }
    pad(os, fixed1(r.min_pcont), 10);
    {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << r.variance;
      pad(os, cell.str(), 10);
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const SummaryTable& table) {
  std::ostringstream os;
  os << "component,pve,pcve,prcve,card,min_load,min_pcont,variance\n";
  for (const SummaryRow& r : table.rows) {
    os << r.component << "," << full_precision(r.pve) << "," << full_precision(r.pcve) << ","
       << full_precision(r.prcve) << "," << r.card << "," << full_precision(r.min_load) << ","
       << full_precision(r.min_pcont) << "," << full_precision(r.variance) << "\n";
  }
  return os.str();
}

ComparisonReport compare(const std::vector<SummaryTable>& tables,
                         const std::vector<std::string>& labels) {
  if (tables.empty()) throw InputError("nothing to compare");
  if (tables.size() != labels.size()) throw InputError("one label per table required");
  for (const SummaryTable& t : tables) {
    if (t.source_dim != tables[0].source_dim ||
        std::abs(t.source_fingerprint - tables[0].source_fingerprint) >
            1e-10 * std::max(1.0, tables[0].source_fingerprint))
      throw DimensionMismatch("summaries come from different matrices");
  }
  return {labels, tables};
}

std::string render_text(const ComparisonReport& report) {
  std::ostringstream os;
  size_t max_rows = 0;
  for (const SummaryTable& t : report.tables) max_rows = std::max(max_rows, t.rows.size());

  pad(os, "Comp", 6);
  for (const std::string& label : report.labels) {
    pad(os, label + " PVE", 14);
    pad(os, label + " PCVE", 14);
    pad(os, label + " Card", 14);
  }
  os << "\n";
  for (size_t r = 0; r < max_rows; ++r) {
    pad(os, std::to_string(r + 1), 6);
    for (const SummaryTable& t : report.tables) {
      if (r < t.rows.size()) {
        pad(os, fixed1(t.rows[r].pve), 14);
        pad(os, fixed1(t.rows[r].pcve), 14);
        pad(os, std::to_string(t.rows[r].card), 14);
      } else {
        pad(os, "-", 14);
        pad(os, "-", 14);
        pad(os, "-", 14);
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "label,component,pve,pcve,prcve,card,min_load,min_pcont,variance\n";
  for (size_t t = 0; t < report.tables.size(); ++t)
    for (const SummaryRow& r : report.tables[t].rows) {
      os << report.labels[t] << "," << r.component << "," << full_precision(r.pve) << ","
         << full_precision(r.pcve) << "," << full_precision(r.prcve) << "," << r.card << ","
         << full_precision(r.min_load) << "," << full_precision(r.min_pcont) << ","
         << full_precision(r.variance) << "\n";
    }
  return os.str();
}

std::string loadings_text(const ComponentSet& set) {
  std::ostringstream os;
  const int p = set.source().dim();
  const auto& names = set.source().names();
  pad(os, "Var", 10);
  for (int k = 0; k < set.size(); ++k) pad(os, "a" + std::to_string(k + 1), 9);
  os << "\n";
  for (int i = 0; i < p; ++i) {
    pad(os, names.empty() ? "x" + std::to_string(i + 1) : names[i], 10);
    for (int k = 0; k < set.size(); ++k) {
      const double v = set.components()[k].loadings[i];
      if (std::abs(v) < 0.001) {
        pad(os, "", 9);
      } else {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(3) << v;
        pad(os, cell.str(), 9);
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string loadings_csv(const ComponentSet& set) {
  std::ostringstream os;
  os << "variable";
  for (int k = 0; k < set.size(); ++k) os << ",a" << (k + 1);
  os << "\n";
  const auto& names = set.source().names();
  for (int i = 0; i < set.source().dim(); ++i) {
    os << (names.empty() ? "x" + std::to_string(i + 1) : names[i]);
    for (int k = 0; k < set.size(); ++k) os << "," << full_precision(set.components()[k].loadings[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace lsspca
