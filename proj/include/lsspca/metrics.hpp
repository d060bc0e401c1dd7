#pragma once

#include <string>
#include <vector>

#include "lsspca/types.hpp"

namespace lsspca {

struct SummaryRow {
  int component = 1;       // 1-based
  double pve = 0.0;        // percent of tr(S)
  double pcve = 0.0;       // cumulative percent
  double prcve = 0.0;      // 100 * pcve / pcve_pca
  int card = 0;
  double min_load = 0.0;   // min |a_i| over the support
  double min_pcont = 0.0;  // 100 * min|a_i| / sum|a_i|
  double variance = 0.0;   // a' S a
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
  double total_variance = 0.0;  // tr(S) of the source
  int source_dim = 0;
  double source_fingerprint = 0.0;  // Frobenius norm, used by compare()
};

SummaryTable summarize(const ComponentSet& set);

std::string render_text(const SummaryTable& table);
/// CSV column order: component, pve, pcve, prcve, card, min_load, min_pcont, variance.
std::string render_csv(const SummaryTable& table);

struct ComparisonReport {
  std::vector<std::string> labels;
  std::vector<SummaryTable> tables;
};

/// Side-by-side view of several summaries computed from the same matrix.
/// Throws DimensionMismatch when the sources differ.
ComparisonReport compare(const std::vector<SummaryTable>& tables,
                         const std::vector<std::string>& labels);

std::string render_text(const ComparisonReport& report);
std::string render_csv(const ComparisonReport& report);

/// Components as columns; text view rounds to 3 decimals and suppresses
/// |a| < 0.001, the CSV carries full precision.
std::string loadings_text(const ComponentSet& set);
std::string loadings_csv(const ComponentSet& set);

}  // namespace lsspca
