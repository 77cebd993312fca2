#include "ampq/io.hpp"

#include <fstream>
#include <sstream>

namespace ampq {

std::string to_token(GroverMode mode) {
  return mode == GroverMode::Ideal ? "ideal" : "quantized";
}

std::string to_token(Rounding rounding) {
  return rounding == Rounding::NearestTiesEven ? "nearest" : "stochastic";
}

std::string to_token(ThresholdCriterion criterion) {
  return criterion == ThresholdCriterion::FirstStep ? "first-step" : "full-run";
}

std::string to_token(HbarMode mode) {
  return mode == HbarMode::Paper ? "paper" : "codata";
}

GroverMode mode_from_token(const std::string& token) {
  if (token == "ideal") return GroverMode::Ideal;
  if (token == "quantized") return GroverMode::Quantized;
  throw ConfigInvalid("unknown mode: " + token);
}

Rounding rounding_from_token(const std::string& token) {
  if (token == "nearest") return Rounding::NearestTiesEven;
  if (token == "stochastic") return Rounding::Stochastic;
  throw ConfigInvalid("unknown rounding: " + token);
}

ThresholdCriterion criterion_from_token(const std::string& token) {
  if (token == "first-step") return ThresholdCriterion::FirstStep;
  if (token == "full-run") return ThresholdCriterion::FullRun;
  throw ConfigInvalid("unknown criterion: " + token);
}

HbarMode hbar_from_token(const std::string& token) {
  if (token == "paper") return HbarMode::Paper;
  if (token == "codata") return HbarMode::Codata;
  throw ConfigInvalid("unknown hbar mode: " + token);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

json state_to_json(const DenseState<double>& psi) {
  json amps = json::array();
  for (Index j = 0; j < psi.dim(); ++j) {
    amps.push_back({psi.amp(j).real(), psi.amp(j).imag()});
  }
  return {{"n", psi.n()}, {"amplitudes", std::move(amps)}};
}

DenseState<double> state_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("amplitudes")) {
    throw SchemaMismatch("state file must be {\"n\": ..., \"amplitudes\": ...}");
  }
  if (!doc["n"].is_number_integer()) {
    throw SchemaMismatch("state file field 'n' must be an integer");
  }
  const int n = doc["n"].get<int>();
  if (n < 1 || n > 30) throw SchemaMismatch("state file 'n' out of range [1, 30]");
  const json& amps = doc["amplitudes"];
  if (!amps.is_array() || static_cast<Index>(amps.size()) != dim_of(n)) {
    throw SchemaMismatch("state file must list exactly 2^n amplitudes");
  }
  DenseState<double>::Vector v(dim_of(n));
  for (Index j = 0; j < v.size(); ++j) {
    const json& pair = amps[static_cast<std::size_t>(j)];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      throw SchemaMismatch("each amplitude must be a [re, im] number pair");
    }
    v(j) = std::complex<double>(pair[0].get<double>(), pair[1].get<double>());
  }
  return DenseState<double>::from_amplitudes(n, std::move(v), 1e-9);
}

DenseState<double> load_state_file(const std::string& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaMismatch("state file is not valid JSON: " + std::string(e.what()));
  }
  return state_from_json(doc);
}

void save_state_file(const std::string& path, const DenseState<double>& psi) {
  write_text_file(path, state_to_json(psi).dump(2) + "\n");
}

json grover_config_to_json(const GroverConfig<double>& cfg) {
  json doc{{"n", cfg.n},
           {"target", cfg.target},
           {"mode", to_token(cfg.mode)},
           {"iterations", cfg.iterations.value_or(grover_iterations(cfg.n))}};
  if (cfg.mode == GroverMode::Quantized) {
    doc["Q"] = cfg.grid.q;
    doc["epsilon"] = cfg.grid.epsilon;
    doc["rounding"] = to_token(cfg.grid.rounding.mode);
    doc["seed"] = cfg.grid.rounding.seed;
  }
  return doc;
}

json trajectory_to_json(const GroverConfig<double>& cfg,
                        const GroverTrajectory<double>& traj) {
  json records = json::array();
  for (const auto& r : traj.records) {
    records.push_back({{"step", r.step},
                       {"target_re", r.target_amplitude.real()},
                       {"target_im", r.target_amplitude.imag()},
                       {"max_other_magnitude", r.max_other_magnitude},
                       {"squared_norm", r.squared_norm},
                       {"success_probability", r.success_probability}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "grover-trajectory"},
          {"config", grover_config_to_json(cfg)},
          {"records", std::move(records)},
          {"iterations", traj.iterations()},
          {"final_success_probability", traj.final_success_probability()},
          {"first_step_pass",
           traj.records.size() >= 2 ? success_first_step(traj) : false}};
}

json threshold_to_json(const ThresholdResult& result) {
  json points = json::array();
  for (const ThresholdPoint& p : result.points) {
    points.push_back({{"n", p.n},
                      {"metric", p.metric},
                      {"pass", p.pass},
                      {"vanished", p.vanished}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"kind", "threshold-scan"},
           {"Q", result.q},
           {"criterion", to_token(result.criterion)},
           {"points", std::move(points)},
           {"non_monotone", result.non_monotone}};
  doc["n_star"] = result.n_star ? json(*result.n_star) : json(nullptr);
  doc["Q_estimate"] = result.q_estimate ? json(*result.q_estimate) : json(nullptr);
  return doc;
}

json kernel_report_to_json(const KernelReport<double>& report) {
  json carriers = json::array();
  for (const QubitSubset& c : report.carriers) {
    carriers.push_back(
        {{"mask", c.mask}, {"qubits", c.qubits()}, {"label", c.to_string()}});
  }
  json kernels = json::array();
  for (const auto& k : report.kernel_states) {
    kernels.push_back(state_to_json(k));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "kernel-report"},
          {"complexity", report.complexity},
          {"carriers", std::move(carriers)},
          {"kernel_states", std::move(kernels)}};
}

json abs_result_to_json(const AbsComplexityResult& result) {
  return {{"complexity", result.complexity},
          {"witness_table", result.witness.table()}};
}

json estimate_to_json(const EstimateReport& report) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "estimate"},
          {"name", report.name},
          {"hbar_erg_s", report.hbar_erg_s},
          {"dt_s", report.dt_s},
          {"N", report.n_states},
          {"log2N", report.log2_n},
          {"qubits", report.qubits}};
}

}  // namespace ampq
