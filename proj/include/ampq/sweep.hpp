// sweep.hpp
// Parameter sweeps: config parsing/validation, the per-point result row,
// deterministic seed derivation, and the parallel sweep driver that writes
// line-delimited JSON results.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ampq/io.hpp"
#include "ampq/uncertainty.hpp"

namespace ampq {

struct SweepConfig {
  std::vector<int> n_values;
  std::vector<int> log2_q_values;
  std::vector<ThresholdCriterion> criteria;
  int runs_per_point = 1;
  std::uint64_t master_seed = 0;
  Rounding rounding = Rounding::NearestTiesEven;
  int parallelism = 0;  // 0 = one worker per hardware thread
  std::string output_path;
  bool record_timings = false;  // timings break byte-identical reruns

  static SweepConfig from_json(const json& doc);        // ConfigInvalid
  static SweepConfig load(const std::string& path);     // IoError/ConfigInvalid
  void validate() const;                                // ConfigInvalid

  /// Total row count: |n| * |log2Q| * |criteria| * runs_per_point.
  std::size_t point_count() const;
};

/// One quantized Grover run at one sweep point.
struct ResultRow {
  std::uint64_t id = 0;  // canonical enumeration counter (seed derivation input)
  int n = 0;
  int log2_q = 0;
  ThresholdCriterion criterion = ThresholdCriterion::FirstStep;
  std::uint64_t seed = 0;  // derived per-row seed
  Index target = 0;
  long iterations = 0;
  double success_probability = 0;
  bool first_step_pass = false;
  double norm_drift = 0;  // final quantized squared norm minus 1
  bool vanished = false;
  double wall_time_ms = 0;
};

/// Per-row seed: mix(master_seed, counter), where counter is the row's index
/// in the canonical enumeration order (n, then log2Q, then criterion, then
/// run). The row's target and any stochastic rounding stream both derive
/// from this seed.
std::uint64_t derive_row_seed(std::uint64_t master_seed, std::uint64_t counter);

json row_to_json(const ResultRow& row);
ResultRow row_from_json(const json& doc);  // SchemaMismatch

/// Executes every point of the Cartesian product and returns the rows in
/// canonical sorted order (n, log2Q, criterion, seed). A vanished initial
/// state produces a failed row, never an error.
std::vector<ResultRow> run_sweep(const SweepConfig& cfg);

/// Header line (schema version + echoed config) followed by one JSON row per
/// line. Identical config and seed produce byte-identical files.
void write_results(const std::string& path, const SweepConfig& cfg,
                   const std::vector<ResultRow>& rows);  // IoError

/// run_sweep + write_results to cfg.output_path; returns the path.
std::string run_sweep_to_file(const SweepConfig& cfg);

}  // namespace ampq
