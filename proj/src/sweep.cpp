#include "ampq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>
#include <tuple>

#include "ampq/grover.hpp"

namespace ampq {

namespace {

std::vector<int> int_list(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw ConfigInvalid(std::string("config field '") + key +
                        "' must be an array of integers");
  }
  std::vector<int> out;
  for (const json& v : doc[key]) {
    if (!v.is_number_integer()) {
      throw ConfigInvalid(std::string("config field '") + key +
                          "' must contain only integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

SweepConfig SweepConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigInvalid("config must be a JSON object");
  SweepConfig cfg;
  cfg.n_values = int_list(doc, "n");
  cfg.log2_q_values = int_list(doc, "log2Q");
  if (!doc.contains("criteria") || !doc["criteria"].is_array()) {
    throw ConfigInvalid("config field 'criteria' must be an array of strings");
  }
  for (const json& v : doc["criteria"]) {
    if (!v.is_string()) {
      throw ConfigInvalid("config field 'criteria' must contain only strings");
    }
    cfg.criteria.push_back(criterion_from_token(v.get<std::string>()));
  }
  if (!doc.contains("output") || !doc["output"].is_string()) {
    throw ConfigInvalid("config field 'output' must be a string path");
  }
  cfg.output_path = doc["output"].get<std::string>();
  cfg.runs_per_point = doc.value("runs_per_point", 1);
  cfg.master_seed = doc.value("master_seed", std::uint64_t{0});
  cfg.parallelism = doc.value("parallelism", 0);
  cfg.record_timings = doc.value("record_timings", false);
  if (doc.contains("rounding")) {
    if (!doc["rounding"].is_string()) {
      throw ConfigInvalid("config field 'rounding' must be a string");
    }
    cfg.rounding = rounding_from_token(doc["rounding"].get<std::string>());
  }
  cfg.validate();
  return cfg;
}

SweepConfig SweepConfig::load(const std::string& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid("config is not valid JSON: " + std::string(e.what()));
  }
  return from_json(doc);
}

void SweepConfig::validate() const {
  if (n_values.empty()) throw ConfigInvalid("axis 'n' must be nonempty");
  if (log2_q_values.empty()) throw ConfigInvalid("axis 'log2Q' must be nonempty");
  if (criteria.empty()) throw ConfigInvalid("axis 'criteria' must be nonempty");
  for (int n : n_values) {
    if (n < 2 || n > 24) {
      throw ConfigInvalid("n values must lie in [2, 24], got " + std::to_string(n));
    }
  }
  for (int q : log2_q_values) {
    if (q < 1 || q > 62) {
      throw ConfigInvalid("log2Q values must lie in [1, 62], got " +
                          std::to_string(q));
    }
  }
  if (runs_per_point < 1) throw ConfigInvalid("runs_per_point must be >= 1");
  if (parallelism < 0) throw ConfigInvalid("parallelism must be >= 0");
  if (output_path.empty()) throw ConfigInvalid("output path must be nonempty");
}

std::size_t SweepConfig::point_count() const {
  return n_values.size() * log2_q_values.size() * criteria.size() *
         static_cast<std::size_t>(runs_per_point);
}

std::uint64_t derive_row_seed(std::uint64_t master_seed, std::uint64_t counter) {
  return detail::mix(master_seed, counter);
}

json row_to_json(const ResultRow& row) {
  return {{"schema_version", kSchemaVersion},
          {"id", row.id},
          {"n", row.n},
          {"log2Q", row.log2_q},
          {"criterion", to_token(row.criterion)},
          {"seed", row.seed},
          {"target", row.target},
          {"iterations", row.iterations},
          {"success_probability", row.success_probability},
          {"first_step_pass", row.first_step_pass},
          {"norm_drift", row.norm_drift},
          {"vanished", row.vanished},
          {"wall_time_ms", row.wall_time_ms}};
}

ResultRow row_from_json(const json& doc) {
  try {
    ResultRow row;
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw SchemaMismatch("unsupported row schema version");
    }
    row.id = doc.at("id").get<std::uint64_t>();
    row.n = doc.at("n").get<int>();
    row.log2_q = doc.at("log2Q").get<int>();
    row.criterion = criterion_from_token(doc.at("criterion").get<std::string>());
    row.seed = doc.at("seed").get<std::uint64_t>();
    row.target = doc.at("target").get<Index>();
    row.iterations = doc.at("iterations").get<long>();
    row.success_probability = doc.at("success_probability").get<double>();
    row.first_step_pass = doc.at("first_step_pass").get<bool>();
    row.norm_drift = doc.at("norm_drift").get<double>();
    row.vanished = doc.at("vanished").get<bool>();
    row.wall_time_ms = doc.at("wall_time_ms").get<double>();
    return row;
  } catch (const json::exception& e) {
    throw SchemaMismatch("result row does not match schema: " +
                         std::string(e.what()));
  } catch (const ConfigInvalid& e) {
    throw SchemaMismatch("result row does not match schema: " +
                         std::string(e.what()));
  }
}

namespace {

struct SweepPoint {
  std::uint64_t counter = 0;
  int n = 0;
  int log2_q = 0;
  ThresholdCriterion criterion = ThresholdCriterion::FirstStep;
};

ResultRow compute_row(const SweepConfig& cfg, const SweepPoint& point) {
  ResultRow row;
  row.id = point.counter;
  row.n = point.n;
  row.log2_q = point.log2_q;
  row.criterion = point.criterion;
  row.seed = derive_row_seed(cfg.master_seed, point.counter);

  std::mt19937_64 rng(row.seed);
  row.target = static_cast<Index>(rng() & (dim_of(point.n) - 1));

  GroverConfig<double> gcfg;
  gcfg.n = point.n;
  gcfg.target = row.target;
  gcfg.mode = GroverMode::Quantized;
  gcfg.grid = GridSpec<double>::make(std::int64_t{1} << point.log2_q,
                                     {cfg.rounding, row.seed});
  if (point.criterion == ThresholdCriterion::FirstStep) gcfg.iterations = 1;
  row.iterations = gcfg.iterations.value_or(grover_iterations(point.n));

  const auto start = std::chrono::steady_clock::now();
  try {
    const auto traj = grover_run(gcfg);
    row.success_probability = traj.final_success_probability();
    row.first_step_pass = success_first_step(traj);
    row.norm_drift = traj.records.back().squared_norm - 1.0;
  } catch (const StateVanished&) {
    row.vanished = true;
    row.success_probability = 0.0;
    row.first_step_pass = false;
    row.norm_drift = -1.0;
  }
  if (cfg.record_timings) {
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();

  std::vector<int> ns = cfg.n_values;
  std::vector<int> qs = cfg.log2_q_values;
  std::vector<ThresholdCriterion> crits = cfg.criteria;
  std::sort(ns.begin(), ns.end());
  std::sort(qs.begin(), qs.end());
  std::sort(crits.begin(), crits.end());

  std::vector<SweepPoint> points;
  points.reserve(cfg.point_count());
  std::uint64_t counter = 0;
  for (int n : ns) {
    for (int q : qs) {
      for (ThresholdCriterion c : crits) {
        for (int run = 0; run < cfg.runs_per_point; ++run) {
          points.push_back({counter++, n, q, c});
        }
      }
    }
  }

  std::vector<ResultRow> rows(points.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min(points.size(),
               static_cast<std::size_t>(cfg.parallelism > 0 ? cfg.parallelism : hw));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      rows[i] = compute_row(cfg, points[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tuple(a.n, a.log2_q, a.criterion, a.seed, a.id) <
           std::tuple(b.n, b.log2_q, b.criterion, b.seed, b.id);
  });
  return rows;
}

void write_results(const std::string& path, const SweepConfig& cfg,
                   const std::vector<ResultRow>& rows) {
  json header{{"schema_version", kSchemaVersion},
              {"kind", "ampq-results"},
              {"config",
               {{"n", cfg.n_values},
                {"log2Q", cfg.log2_q_values},
                {"criteria", json::array()},
                {"runs_per_point", cfg.runs_per_point},
                {"master_seed", cfg.master_seed},
                {"rounding", to_token(cfg.rounding)},
                {"record_timings", cfg.record_timings}}}};
  for (ThresholdCriterion c : cfg.criteria) {
    header["config"]["criteria"].push_back(to_token(c));
  }
  std::ostringstream out;
  out << header.dump() << '\n';
  for (const ResultRow& row : rows) {
    out << row_to_json(row).dump() << '\n';
  }
  write_text_file(path, out.str());
}

std::string run_sweep_to_file(const SweepConfig& cfg) {
  write_results(cfg.output_path, cfg, run_sweep(cfg));
  return cfg.output_path;
}

}  // namespace ampq
