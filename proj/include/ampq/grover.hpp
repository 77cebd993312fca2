// grover.hpp
// Grover search in exact and grid-quantized modes: the oracle reflection,
// the diffusion step, full runs with trajectory capture, and the analytic
// reference formulas.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "ampq/errors.hpp"
#include "ampq/state.hpp"

namespace ampq {

enum class GroverMode { Ideal, Quantized };

template <typename Scalar = double>
struct GroverConfig {
  int n = 2;
  Index target = 0;  // the unique solution x_t
  GroverMode mode = GroverMode::Ideal;
  GridSpec<Scalar> grid{};               // used in quantized mode
  std::optional<long> iterations{};      // default: floor(pi * sqrt(N) / 4)
};

template <typename Scalar = double>
struct GroverRecord {
  long step = 0;
  std::complex<Scalar> target_amplitude{};  // unit-normalized
  Scalar max_other_magnitude = 0;           // unit-normalized
  Scalar squared_norm = 0;                  // raw working-state norm
  Scalar success_probability = 0;
};

template <typename Scalar = double>
struct GroverTrajectory {
  std::vector<GroverRecord<Scalar>> records;  // length = iterations + 1

  long iterations() const { return static_cast<long>(records.size()) - 1; }
  Scalar final_success_probability() const {
    return records.back().success_probability;
  }
};

/// Integer part of pi * sqrt(2^n) / 4.
inline long grover_iterations(int n) {
  return static_cast<long>(std::floor(
      std::numbers::pi * std::exp2(0.5 * n) / 4.0));
}

namespace detail {

inline void check_target(int n, Index target) {
  if (target < 0 || target >= dim_of(n)) {
    throw IndexOutOfRange("target index out of range for n qubits");
  }
}

template <typename Scalar>
void oracle_phase_inplace(DenseState<Scalar>& s, Index target) {
  check_target(s.n(), target);
  s.mutable_amps()(target) = -s.mutable_amps()(target);
}

template <typename Scalar>
void oracle_phase_inplace(QuantizedState<Scalar>& s, Index target) {
  check_target(s.n(), target);
  s.mutable_k()(target) = -s.mutable_k()(target);
  s.mutable_l()(target) = -s.mutable_l()(target);
}

template <typename Scalar>
GroverRecord<Scalar> observe(const DenseState<Scalar>& s, Index target, long step) {
  GroverRecord<Scalar> r;
  r.step = step;
  r.squared_norm = s.squared_norm();
  if (r.squared_norm <= Scalar(0)) return r;
  const Scalar inv = Scalar(1) / std::sqrt(r.squared_norm);
  r.target_amplitude = s.amp(target) * inv;
  Scalar max_sq = 0;
  for (Index j = 0; j < s.dim(); ++j) {
    if (j == target) continue;
    max_sq = std::max(max_sq, std::norm(s.amp(j)));
  }
  r.max_other_magnitude = std::sqrt(max_sq) * inv;
  r.success_probability = std::norm(r.target_amplitude);
  return r;
}

template <typename Scalar>
GroverRecord<Scalar> observe(const QuantizedState<Scalar>& s, Index target, long step) {
  GroverRecord<Scalar> r;
  r.step = step;
  r.squared_norm = s.norm_history().empty() ? s.squared_norm()
                                            : s.norm_history().back();
  if (r.squared_norm <= Scalar(0)) return r;
  const Scalar inv = Scalar(1) / std::sqrt(r.squared_norm);
  r.target_amplitude = s.value(target) * inv;
  std::int64_t max_mag = 0;
  for (Index j = 0; j < s.dim(); ++j) {
    if (j == target) continue;
    const auto a = s.amp(j);
    max_mag = std::max(max_mag, a.k * a.k + a.l * a.l);
  }
  r.max_other_magnitude =
      std::sqrt(static_cast<Scalar>(max_mag)) * s.grid().epsilon * inv;
  r.success_probability = std::norm(r.target_amplitude);
  return r;
}

}  // namespace detail

/// I_{x_t}: negate the target amplitude. Exact in both modes.
template <typename Scalar>
DenseState<Scalar> oracle_phase(const DenseState<Scalar>& s, Index target) {
  DenseState<Scalar> out = s;
  detail::oracle_phase_inplace(out, target);
  return out;
}

template <typename Scalar>
QuantizedState<Scalar> oracle_phase(const QuantizedState<Scalar>& s, Index target) {
  QuantizedState<Scalar> out = s;
  detail::oracle_phase_inplace(out, target);
  return out;
}

/// One application of G = -I_{~0} I_{x_t}: the oracle reflection followed by
/// inversion about the mean (which is exactly -I_{~0}).
template <typename Scalar>
DenseState<Scalar> grover_step(const DenseState<Scalar>& s, Index target) {
  DenseState<Scalar> out = s;
  detail::oracle_phase_inplace(out, target);
  detail::invert_about_mean_inplace(out);
  return out;
}

template <typename Scalar>
QuantizedState<Scalar> grover_step(const QuantizedState<Scalar>& s, Index target) {
  QuantizedState<Scalar> out = s;
  detail::oracle_phase_inplace(out, target);
  detail::invert_about_mean_inplace(out);
  return out;
}

/// Verifies that the (n+1)-qubit oracle f_q |x,y> -> |x, y xor f(x)> applied
/// to |x> tensor (|0>-|1>)/sqrt(2) induces exactly the n-qubit phase flip,
/// for every computational basis input. The ancilla is the top qubit.
template <typename Scalar = double>
bool oracle_ancilla_check(int n, Index target) {
  if (n > 10) throw TooLarge("ancilla verification is limited to n <= 10");
  detail::check_target(n, target);
  using Complex = std::complex<Scalar>;
  const Index d = dim_of(n);
  const Scalar a = Scalar(1) / std::sqrt(Scalar(2));
  const Scalar tol = Scalar(1e-12);
  for (Index x = 0; x < d; ++x) {
    // |x> tensor |~0>_ancilla
    typename DenseState<Scalar>::Vector full =
        DenseState<Scalar>::Vector::Zero(2 * d);
    full(x) = Complex(a, 0);
    full(x + d) = Complex(-a, 0);
    // f_q: swap (x', 0) <-> (x', 1) exactly where f(x') = 1
    std::swap(full(target), full(target + d));
    // expected: (oracle_phase |x>) tensor |~0>
    const Scalar sign = (x == target) ? Scalar(-1) : Scalar(1);
    for (Index j = 0; j < 2 * d; ++j) {
      Complex expected(0, 0);
      if (j == x) expected = Complex(sign * a, 0);
      if (j == x + d) expected = Complex(-sign * a, 0);
      if (std::abs(full(j) - expected) > tol) return false;
    }
  }
  return true;
}

/// sin^2((2s+1) * arcsin(2^{-n/2})): the exact two-dimensional rotation.
inline double ideal_success_probability(int n, long s) {
  if (n < 1) throw BadSpec("qubit count must be positive");
  if (s < 0) throw BadSpec("iteration count must be non-negative");
  const double theta = std::asin(std::exp2(-0.5 * n));
  const double v = std::sin(static_cast<double>(2 * s + 1) * theta);
  return v * v;
}

/// sin^2(2s / sqrt(N)): the small-angle approximation of the same rotation.
inline double small_angle_success_approximation(int n, long s) {
  if (n < 1) throw BadSpec("qubit count must be positive");
  if (s < 0) throw BadSpec("iteration count must be non-negative");
  const double v = std::sin(2.0 * static_cast<double>(s) * std::exp2(-0.5 * n));
  return v * v;
}

/// Full run from the uniform superposition, recording one trajectory entry
/// per step (the initial state included). Quantized mode quantizes the
/// uniform state first and evolves entirely on the grid; records are
/// unit-normalized so both modes are directly comparable.
template <typename Scalar = double>
GroverTrajectory<Scalar> grover_run(const GroverConfig<Scalar>& cfg) {
  detail::check_target(cfg.n, cfg.target);
  const long iterations = cfg.iterations.value_or(grover_iterations(cfg.n));
  if (iterations < 0) throw BadSpec("iteration override must be non-negative");

  GroverTrajectory<Scalar> traj;
  traj.records.reserve(iterations + 1);

  if (cfg.mode == GroverMode::Ideal) {
    DenseState<Scalar> state = DenseState<Scalar>::uniform(cfg.n);
    traj.records.push_back(detail::observe(state, cfg.target, 0));
    for (long s = 1; s <= iterations; ++s) {
      detail::oracle_phase_inplace(state, cfg.target);
      detail::invert_about_mean_inplace(state);
      traj.records.push_back(detail::observe(state, cfg.target, s));
    }
  } else {
    QuantizedState<Scalar> state =
        quantize(DenseState<Scalar>::uniform(cfg.n), cfg.grid);
    traj.records.push_back(detail::observe(state, cfg.target, 0));
    for (long s = 1; s <= iterations; ++s) {
      detail::oracle_phase_inplace(state, cfg.target);
      detail::invert_about_mean_inplace(state);
      traj.records.push_back(detail::observe(state, cfg.target, s));
    }
  }
  return traj;
}

/// True iff after the first application of G the target amplitude strictly
/// exceeds every other amplitude in magnitude. A trajectory that never
/// applied G has no excess to report.
template <typename Scalar>
bool success_first_step(const GroverTrajectory<Scalar>& traj) {
  if (traj.records.empty()) throw TooShort("empty trajectory");
  if (traj.records.size() < 2) return false;
  const auto& r = traj.records[1];
  return std::abs(r.target_amplitude) > r.max_other_magnitude;
}

}  // namespace ampq
