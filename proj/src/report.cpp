#include "ampq/report.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <sstream>
#include <tuple>

namespace ampq {

namespace {

std::string double_to_string(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ResultsFile read_results(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaMismatch("results file is empty (missing header line)");
  }
  ResultsFile file;
  try {
    file.header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaMismatch("results header is not valid JSON: " +
                         std::string(e.what()));
  }
  if (!file.header.is_object() ||
      file.header.value("kind", std::string{}) != "ampq-results" ||
      file.header.value("schema_version", -1) != kSchemaVersion) {
    throw SchemaMismatch("results header kind/schema_version mismatch");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaMismatch("line " + std::to_string(lineno) +
                           " is not valid JSON: " + std::string(e.what()));
    }
    file.rows.push_back(row_from_json(doc));
  }
  return file;
}

bool row_passes(const ResultRow& row) {
  if (row.vanished) return false;
  if (row.criterion == ThresholdCriterion::FirstStep) return row.first_step_pass;
  return row.success_probability >= kFullRunPassBar;
}

Report build_report(const std::vector<ResultRow>& rows) {
  std::map<std::tuple<ThresholdCriterion, int, int>, std::vector<const ResultRow*>>
      cells;
  for (const ResultRow& row : rows) {
    cells[{row.criterion, row.log2_q, row.n}].push_back(&row);
  }

  Report report;
  std::map<std::pair<ThresholdCriterion, int>, std::optional<int>> thresholds;
  for (const auto& [key, cell_rows] : cells) {
    const auto& [criterion, log2_q, n] = key;
    ReportCell cell;
    cell.criterion = criterion;
    cell.log2_q = log2_q;
    cell.n = n;
    cell.rows = static_cast<int>(cell_rows.size());
    int passed = 0;
    double success_sum = 0;
    for (const ResultRow* row : cell_rows) {
      if (row_passes(*row)) ++passed;
      success_sum += row->success_probability;
    }
    cell.pass_rate = static_cast<double>(passed) / cell.rows;
    cell.mean_success = success_sum / cell.rows;
    report.cells.push_back(cell);
  }
  // n_star = largest n whose cell passes completely, per (criterion, log2Q)
  for (const ReportCell& cell : report.cells) {
    auto& n_star = thresholds[{cell.criterion, cell.log2_q}];
    if (cell.pass_rate == 1.0 && (!n_star || cell.n > *n_star)) n_star = cell.n;
  }
  for (const auto& [key, n_star] : thresholds) {
    report.thresholds.push_back({key.first, key.second, n_star});
  }

  std::sort(report.cells.begin(), report.cells.end(),
            [](const ReportCell& a, const ReportCell& b) {
              return std::tuple(a.criterion, a.log2_q, a.n) <
                     std::tuple(b.criterion, b.log2_q, b.n);
            });
  std::sort(report.thresholds.begin(), report.thresholds.end(),
            [](const ThresholdEntry& a, const ThresholdEntry& b) {
              return std::tuple(a.criterion, a.log2_q) <
                     std::tuple(b.criterion, b.log2_q);
            });
  return report;
}

json report_to_json(const Report& report) {
  json cells = json::array();
  for (const ReportCell& c : report.cells) {
    cells.push_back({{"criterion", to_token(c.criterion)},
                     {"log2Q", c.log2_q},
                     {"n", c.n},
                     {"rows", c.rows},
                     {"pass_rate", c.pass_rate},
                     {"mean_success", c.mean_success}});
  }
  json thresholds = json::array();
  for (const ThresholdEntry& t : report.thresholds) {
    thresholds.push_back(
        {{"criterion", to_token(t.criterion)},
         {"log2Q", t.log2_q},
         {"n_star", t.n_star ? json(*t.n_star) : json(nullptr)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "ampq-report"},
          {"cells", std::move(cells)},
          {"thresholds", std::move(thresholds)}};
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "id,n,log2Q,criterion,seed,target,iterations,success_probability,"
         "first_step_pass,norm_drift,vanished,wall_time_ms\n";
  for (const ResultRow& r : rows) {
    out << r.id << ',' << r.n << ',' << r.log2_q << ',' << to_token(r.criterion)
        << ',' << r.seed << ',' << r.target << ',' << r.iterations << ','
        << double_to_string(r.success_probability) << ','
        << (r.first_step_pass ? "true" : "false") << ','
        << double_to_string(r.norm_drift) << ','
        << (r.vanished ? "true" : "false") << ','
        << double_to_string(r.wall_time_ms) << '\n';
  }
  return out.str();
}

std::vector<std::string> write_plot_files(const Report& report,
                                          const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  const fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);

  // n vs mean success, one file per (criterion, log2Q)
  std::map<std::pair<ThresholdCriterion, int>, std::ostringstream> curves;
  for (const ReportCell& c : report.cells) {
    curves[{c.criterion, c.log2_q}]
        << c.n << ' ' << double_to_string(c.mean_success) << '\n';
  }
  for (auto& [key, body] : curves) {
    const std::string name = "success_vs_n_" + to_token(key.first) + "_q" +
                             std::to_string(key.second) + ".dat";
    const std::string path = (base / name).string();
    write_text_file(path, body.str());
    written.push_back(path);
  }

  // log2Q vs n_star, one file per criterion; entries with no n_star omitted
  std::map<ThresholdCriterion, std::ostringstream> nstar;
  for (const ThresholdEntry& t : report.thresholds) {
    if (!t.n_star) continue;
    nstar[t.criterion] << t.log2_q << ' ' << *t.n_star << '\n';
  }
  for (auto& [criterion, body] : nstar) {
    const std::string name = "nstar_vs_log2q_" + to_token(criterion) + ".dat";
    const std::string path = (base / name).string();
    write_text_file(path, body.str());
    written.push_back(path);
  }
  return written;
}

}  // namespace ampq
