// io.hpp
// Serialization surface: the state-file format, JSON views of trajectories,
// threshold scans, complexity reports and physical estimates, and the
// token <-> enum helpers shared by the CLI and the config parser.

#pragma once

#include <string>

#include "json.hpp"

#include "ampq/complexity.hpp"
#include "ampq/grover.hpp"
#include "ampq/physest.hpp"
#include "ampq/state.hpp"
#include "ampq/uncertainty.hpp"

namespace ampq {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// --- token helpers (throw ConfigInvalid on unknown tokens) -------------------

std::string to_token(GroverMode mode);
std::string to_token(Rounding rounding);
std::string to_token(ThresholdCriterion criterion);
std::string to_token(HbarMode mode);

GroverMode mode_from_token(const std::string& token);
Rounding rounding_from_token(const std::string& token);
ThresholdCriterion criterion_from_token(const std::string& token);
HbarMode hbar_from_token(const std::string& token);

// --- plain text files ---------------------------------------------------------

std::string read_text_file(const std::string& path);              // IoError
void write_text_file(const std::string& path, const std::string& content);

// --- the state-file format ---------------------------------------------------
// {"n": <int>, "amplitudes": [[re, im] x 2^n]}, unit norm within 1e-9.

json state_to_json(const DenseState<double>& psi);
DenseState<double> state_from_json(const json& doc);      // SchemaMismatch/BadSpec
DenseState<double> load_state_file(const std::string& path);
void save_state_file(const std::string& path, const DenseState<double>& psi);

// --- result documents --------------------------------------------------------

json grover_config_to_json(const GroverConfig<double>& cfg);
json trajectory_to_json(const GroverConfig<double>& cfg,
                        const GroverTrajectory<double>& traj);
json threshold_to_json(const ThresholdResult& result);
json kernel_report_to_json(const KernelReport<double>& report);
json abs_result_to_json(const AbsComplexityResult& result);
json estimate_to_json(const EstimateReport& report);

}  // namespace ampq
