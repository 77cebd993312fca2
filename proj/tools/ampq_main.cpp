// ampq: command-line front door for the amplitude-grid experiments.
//
// Subcommands: grover (single run), threshold (largest working qubit count),
// complexity (entanglement measures of a state file), estimate (physical
// process bookkeeping), sweep (parameter sweeps), report (summaries and
// plot data from sweep results).
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ampq/io.hpp"
#include "ampq/report.hpp"
#include "ampq/sweep.hpp"

namespace {

struct GroverArgs {
  int n = 0;
  std::int64_t target = 0;
  std::string mode = "ideal";
  int log2_q = 40;
  std::string rounding = "nearest";
  std::uint64_t seed = 0;
  std::string out;
};

struct ThresholdArgs {
  int log2_q = 8;
  std::string criterion = "first-step";
  int n_max = 12;
  int runs = 8;
  std::uint64_t seed = 0;
};

struct ComplexityArgs {
  std::string state_file;
  bool abs = false;
  long budget = 10000;
  std::uint64_t seed = 0;
  double tol = ampq::kDefaultRankTol;
};

struct EstimateArgs {
  std::string preset;
  std::optional<double> energy_erg;
  std::optional<double> time_s;
  std::string hbar = "paper";
};

int run_grover(const GroverArgs& a) {
  ampq::GroverConfig<double> cfg;
  cfg.n = a.n;
  cfg.target = static_cast<ampq::Index>(a.target);
  cfg.mode = ampq::mode_from_token(a.mode);
  if (cfg.mode == ampq::GroverMode::Quantized) {
    cfg.grid = ampq::GridSpec<double>::make(
        std::int64_t{1} << a.log2_q,
        {ampq::rounding_from_token(a.rounding), a.seed});
  }
  const auto traj = ampq::grover_run(cfg);
  const ampq::json doc = ampq::trajectory_to_json(cfg, traj);
  if (a.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    ampq::write_text_file(a.out, doc.dump(2) + "\n");
    std::cout << "wrote " << a.out << " (final success probability "
              << traj.final_success_probability() << ")\n";
  }
  return 0;
}

int run_threshold(const ThresholdArgs& a) {
  const auto result = ampq::grover_threshold(
      std::int64_t{1} << a.log2_q, ampq::criterion_from_token(a.criterion),
      a.n_max, a.runs, a.seed);
  std::cout << ampq::threshold_to_json(result).dump(2) << '\n';
  return 0;
}

int run_complexity(const ComplexityArgs& a) {
  const auto psi = ampq::load_state_file(a.state_file);
  ampq::json doc = ampq::kernel_report_to_json(ampq::complexity_C(psi, a.tol));
  if (a.abs) {
    doc["abs_bound"] = ampq::abs_result_to_json(
        ampq::abs_complexity_bound(psi, a.budget, a.seed, a.tol));
    if (psi.n() <= 3) {
      doc["abs_exact"] =
          ampq::abs_result_to_json(ampq::abs_complexity_exact(psi, a.tol));
    }
  }
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int run_estimate(const EstimateArgs& a) {
  const bool custom = a.energy_erg.has_value() || a.time_s.has_value();
  if (a.preset.empty() == !custom) {
    throw ampq::ConfigInvalid(
        "give either --preset or both --energy-erg and --time-s");
  }
  ampq::ProcessSpec spec;
  if (!a.preset.empty()) {
    for (const ampq::ProcessSpec& p : ampq::preset_catalog()) {
      if (p.name == a.preset) spec = p;
    }
    if (spec.name.empty()) throw ampq::ConfigInvalid("unknown preset: " + a.preset);
  } else {
    if (!a.energy_erg || !a.time_s) {
      throw ampq::ConfigInvalid("custom estimates need --energy-erg and --time-s");
    }
    spec.name = "custom";
    spec.description = "caller-supplied process";
    spec.energy_erg = *a.energy_erg;
    spec.duration_s = *a.time_s;
  }
  spec.hbar_mode = ampq::hbar_from_token(a.hbar);
  std::cout << ampq::estimate_to_json(ampq::estimate_process(spec)).dump(2)
            << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& config_path) {
  const ampq::SweepConfig cfg = ampq::SweepConfig::load(config_path);
  const std::string path = ampq::run_sweep_to_file(cfg);
  std::cout << "wrote " << path << " (" << cfg.point_count() << " rows)\n";
  return 0;
}

int run_report(const std::string& in_path, const std::string& format) {
  const ampq::ResultsFile file = ampq::read_results(in_path);
  const ampq::Report report = ampq::build_report(file.rows);
  if (format == "json") {
    std::cout << ampq::report_to_json(report).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << ampq::rows_to_csv(file.rows);
  } else {
    const std::string dir =
        std::filesystem::path(in_path).parent_path().string();
    for (const std::string& path : ampq::write_plot_files(report, dir)) {
      std::cout << "wrote " << path << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amplitude-grid quantum search simulator and experiment harness"};
  app.require_subcommand(1);

  GroverArgs grover;
  CLI::App* grover_cmd =
      app.add_subcommand("grover", "run Grover search once, ideal or quantized");
  grover_cmd->add_option("--n", grover.n, "qubit count")
      ->required()
      ->check(CLI::Range(1, 24));
  grover_cmd->add_option("--target", grover.target, "solution basis index")
      ->required();
  grover_cmd->add_option("--mode", grover.mode, "ideal|quantized")
      ->check(CLI::IsMember({"ideal", "quantized"}));
  grover_cmd->add_option("--log2Q", grover.log2_q, "grid constant Q = 2^log2Q")
      ->check(CLI::Range(1, 62));
  grover_cmd->add_option("--rounding", grover.rounding, "nearest|stochastic")
      ->check(CLI::IsMember({"nearest", "stochastic"}));
  grover_cmd->add_option("--seed", grover.seed, "stochastic rounding seed");
  grover_cmd->add_option("--out", grover.out, "write the trajectory JSON here");

  ThresholdArgs threshold;
  CLI::App* threshold_cmd = app.add_subcommand(
      "threshold", "scan n upward for the largest working qubit count");
  threshold_cmd->add_option("--log2Q", threshold.log2_q, "grid constant Q = 2^log2Q")
      ->required()
      ->check(CLI::Range(1, 62));
  threshold_cmd
      ->add_option("--criterion", threshold.criterion, "first-step|full-run")
      ->check(CLI::IsMember({"first-step", "full-run"}));
  threshold_cmd->add_option("--n-max", threshold.n_max, "largest n to test")
      ->check(CLI::Range(2, 24));
  threshold_cmd->add_option("--runs", threshold.runs, "random targets per n")
      ->check(CLI::Range(1, 1 << 20));
  threshold_cmd->add_option("--seed", threshold.seed, "target-draw seed");

  ComplexityArgs complexity;
  CLI::App* complexity_cmd = app.add_subcommand(
      "complexity", "entanglement complexity of a state file");
  complexity_cmd
      ->add_option("--state-file", complexity.state_file, "input state JSON")
      ->required();
  complexity_cmd->add_flag("--abs", complexity.abs,
                           "also search for an absolute-complexity bound");
  complexity_cmd->add_option("--budget", complexity.budget,
                             "complexity evaluations allowed in the search");
  complexity_cmd->add_option("--seed", complexity.seed, "search restart seed");
  complexity_cmd->add_option("--tol", complexity.tol,
                             "rank-1 tolerance for the product test");

  EstimateArgs estimate;
  CLI::App* estimate_cmd = app.add_subcommand(
      "estimate", "dt, N = t/dt, and qubit count for a physical process");
  estimate_cmd->add_option("--preset", estimate.preset, "rb85|he6|he5-stage")
      ->check(CLI::IsMember({"rb85", "he6", "he5-stage"}));
  estimate_cmd->add_option("--energy-erg", estimate.energy_erg,
                           "characteristic energy E in erg");
  estimate_cmd->add_option("--time-s", estimate.time_s,
                           "total process time t in seconds");
  estimate_cmd->add_option("--hbar", estimate.hbar, "paper|codata")
      ->check(CLI::IsMember({"paper", "codata"}));

  std::string sweep_config;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run the Cartesian sweep described by a config");
  sweep_cmd->add_option("--config", sweep_config, "sweep config JSON")->required();

  std::string report_in;
  std::string report_format = "json";
  CLI::App* report_cmd =
      app.add_subcommand("report", "summarize a results file");
  report_cmd->add_option("--in", report_in, "results file from sweep")->required();
  report_cmd->add_option("--format", report_format, "json|csv|plot")
      ->check(CLI::IsMember({"json", "csv", "plot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (grover_cmd->parsed()) return run_grover(grover);
    if (threshold_cmd->parsed()) return run_threshold(threshold);
    if (complexity_cmd->parsed()) return run_complexity(complexity);
    if (estimate_cmd->parsed()) return run_estimate(estimate);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_config);
    if (report_cmd->parsed()) return run_report(report_in, report_format);
    return 0;
  } catch (const ampq::ConfigInvalid& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ampq::SchemaMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
