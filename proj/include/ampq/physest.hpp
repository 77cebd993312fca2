// physest.hpp
// Order-of-magnitude bookkeeping for physical processes: the time step dt
// implied by the energy-time uncertainty relation, the number of basic
// states N = t/dt needed to draw the process, and the equivalent qubit count.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ampq/errors.hpp"

namespace ampq {

/// Two Planck-constant conventions (erg*s): the rounded value used by the
/// source estimates, and the CODATA value for honest numbers.
enum class HbarMode { Paper, Codata };

inline constexpr double kHbarPaperErgS = 1e-27;
inline constexpr double kHbarCodataErgS = 1.054571817e-27;
inline constexpr double kSpeedOfLightCmPerS = 2.9979e10;

inline double hbar_of(HbarMode mode) {
  return mode == HbarMode::Paper ? kHbarPaperErgS : kHbarCodataErgS;
}

struct ProcessSpec {
  std::string name;         // preset token, e.g. "rb85"
  std::string description;  // human-readable label
  double energy_erg = 0;    // characteristic energy E
  double duration_s = 0;    // total process time t
  HbarMode hbar_mode = HbarMode::Paper;
};

struct EstimateReport {
  std::string name;
  double hbar_erg_s = 0;
  double dt_s = 0;      // hbar / E
  double n_states = 0;  // t / dt; kept real, it can exceed any integer type
  double log2_n = 0;
  long long qubits = 0;  // floor(log2 N)
};

/// dt = hbar/E, N = t/dt, qubits = floor(log2 N).
inline EstimateReport estimate_process(const ProcessSpec& p) {
  if (!(p.energy_erg > 0)) throw BadSpec("energy must be positive");
  if (!(p.duration_s > 0)) throw BadSpec("duration must be positive");
  EstimateReport r;
  r.name = p.name;
  r.hbar_erg_s = hbar_of(p.hbar_mode);
  r.dt_s = r.hbar_erg_s / p.energy_erg;
  r.n_states = p.duration_s / r.dt_s;
  r.log2_n = std::log2(r.n_states);
  r.qubits = static_cast<long long>(std::floor(r.log2_n));
  return r;
}

/// The three built-in processes: a Rabi oscillation in Rb-85, the full decay
/// of the unstable He-6 nucleus, and the final 10^-11 s stage of He-5 decay.
inline std::vector<ProcessSpec> preset_catalog() {
  return {
      {"rb85", "Rb-85 Rabi oscillation", 1e-17, 1e-6, HbarMode::Paper},
      {"he6", "He-6 nuclear decay", 1e-5, 1.6, HbarMode::Paper},
      {"he5-stage", "He-5 decay, last stage", 1e-5, 1e-11, HbarMode::Paper},
  };
}

/// Photon energy E = hbar*omega from a wavelength. The angular frequency is
/// omega = 2*pi*c/lambda; pass include_two_pi = false to reproduce estimates
/// that use the plain c/lambda ratio.
inline double photon_energy_erg(double wavelength_cm, bool include_two_pi = true,
                                HbarMode mode = HbarMode::Paper) {
  if (!(wavelength_cm > 0)) throw BadSpec("wavelength must be positive");
  const double omega = (include_two_pi ? 2.0 * std::numbers::pi : 1.0) *
                       kSpeedOfLightCmPerS / wavelength_cm;
  return hbar_of(mode) * omega;
}

}  // namespace ampq
