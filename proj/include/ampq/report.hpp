// report.hpp
// Reading results files back and summarizing them: per-cell aggregates,
// threshold tables, CSV export, and plot-ready two-column data files.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ampq/sweep.hpp"

namespace ampq {

struct ResultsFile {
  json header;
  std::vector<ResultRow> rows;
};

/// Parses a line-delimited results file. IoError if unreadable,
/// SchemaMismatch if the header or any row does not match the schema.
ResultsFile read_results(const std::string& path);

/// Aggregate over all rows sharing (criterion, n, log2Q).
struct ReportCell {
  ThresholdCriterion criterion = ThresholdCriterion::FirstStep;
  int n = 0;
  int log2_q = 0;
  int rows = 0;
  double pass_rate = 0;
  double mean_success = 0;
};

/// Largest n whose cell passes completely, per (criterion, log2Q).
struct ThresholdEntry {
  ThresholdCriterion criterion = ThresholdCriterion::FirstStep;
  int log2_q = 0;
  std::optional<int> n_star;
};

struct Report {
  std::vector<ReportCell> cells;           // canonical order
  std::vector<ThresholdEntry> thresholds;  // canonical order
};

/// Row-level pass check used by the aggregates: first-step rows pass on the
/// recorded flag, full-run rows on success probability >= the pass bar;
/// vanished rows never pass.
bool row_passes(const ResultRow& row);

Report build_report(const std::vector<ResultRow>& rows);
json report_to_json(const Report& report);
std::string rows_to_csv(const std::vector<ResultRow>& rows);

/// Writes success_vs_n_<criterion>_q<log2Q>.dat (n vs mean success) and
/// nstar_vs_log2q_<criterion>.dat (log2Q vs n_star) into `dir`; returns the
/// paths written. Entries with no passing n are omitted from the n_star files.
std::vector<std::string> write_plot_files(const Report& report,
                                          const std::string& dir);

}  // namespace ampq
