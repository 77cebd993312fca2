// state.hpp
// State representations: DenseState (machine-precision complex amplitudes)
// and QuantizedState (integer grid coordinates sharing one amplitude
// quantum), plus the quantizer and the arithmetic primitives built on them.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ampq/errors.hpp"
#include "ampq/grid.hpp"

namespace ampq {

using Index = Eigen::Index;

inline Index dim_of(int n) { return Index{1} << n; }

/// Reference state vector: 2^n complex amplitudes at machine precision,
/// kept at unit L2 norm. Qubit q maps to bit q of the basis index.
template <typename Scalar = double>
class DenseState {
 public:
  using Complex = std::complex<Scalar>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  DenseState() = default;

  int n() const { return n_; }
  Index dim() const { return amps_.size(); }
  const Vector& amps() const { return amps_; }
  Complex amp(Index j) const { return amps_(j); }
  Scalar squared_norm() const { return amps_.squaredNorm(); }

  static DenseState basis(int n, Index j) {
    check_n(n);
    if (j < 0 || j >= dim_of(n)) {
      throw IndexOutOfRange("basis index out of range");
    }
    DenseState s;
    s.n_ = n;
    s.amps_ = Vector::Zero(dim_of(n));
    s.amps_(j) = Complex(1, 0);
    return s;
  }

  static DenseState uniform(int n) {
    check_n(n);
    DenseState s;
    s.n_ = n;
    const Scalar a = Scalar(1) / std::sqrt(Scalar(dim_of(n)));
    s.amps_ = Vector::Constant(dim_of(n), Complex(a, 0));
    return s;
  }

  /// Accepts amplitudes that are unit-norm within `tol`, then renormalizes
  /// exactly so downstream arithmetic sees a clean unit vector.
  static DenseState from_amplitudes(int n, Vector amps, Scalar tol = Scalar(1e-9)) {
    check_n(n);
    if (amps.size() != dim_of(n)) {
      throw DimensionMismatch("expected 2^n amplitudes");
    }
    const Scalar norm = amps.norm();
    if (std::abs(norm - Scalar(1)) > tol) {
      throw BadSpec("amplitudes are not unit norm (|norm-1| = " +
                    std::to_string(std::abs(norm - Scalar(1))) + ")");
    }
    DenseState s;
    s.n_ = n;
    s.amps_ = std::move(amps);
    s.amps_ /= norm;
    return s;
  }

  /// Bypasses the norm check; for internal use by operations that preserve
  /// the invariant themselves.
  static DenseState unchecked(int n, Vector amps) {
    DenseState s;
    s.n_ = n;
    s.amps_ = std::move(amps);
    return s;
  }

  Vector& mutable_amps() { return amps_; }

 private:
  static void check_n(int n) {
    if (n < 1 || n > 30) throw BadSpec("qubit count must lie in [1, 30]");
  }

  int n_ = 0;
  Vector amps_;
};

/// One grid amplitude: value = (k + i*l) * epsilon of the owning grid.
struct QuantizedAmplitude {
  std::int64_t k = 0;
  std::int64_t l = 0;
};

/// Grid-quantized state: 2^n integer coordinate pairs on one shared grid.
/// Every grid-rounding step appends the resulting squared norm to the
/// norm history; the state is never renormalized, so drift is data.
template <typename Scalar = double>
class QuantizedState {
 public:
  using IntArray = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;
  using Complex = std::complex<Scalar>;

  QuantizedState() = default;

  int n() const { return n_; }
  Index dim() const { return k_.size(); }
  const GridSpec<Scalar>& grid() const { return grid_; }
  const IntArray& k_coords() const { return k_; }
  const IntArray& l_coords() const { return l_; }

  QuantizedAmplitude amp(Index j) const { return {k_(j), l_(j)}; }

  Complex value(Index j) const {
    return Complex(Scalar(k_(j)) * grid_.epsilon, Scalar(l_(j)) * grid_.epsilon);
  }

  /// Sum of (k^2 + l^2) * epsilon^2; accumulated in 128-bit integers so the
  /// integer part is exact even for Q near 2^62.
  Scalar squared_norm() const {
    unsigned __int128 acc = 0;
    for (Index j = 0; j < k_.size(); ++j) {
      acc += static_cast<unsigned __int128>(k_(j) * k_(j)) +
             static_cast<unsigned __int128>(l_(j) * l_(j));
    }
    return static_cast<Scalar>(static_cast<double>(acc)) * grid_.epsilon * grid_.epsilon;
  }

  Index nonzero_count() const {
    Index c = 0;
    for (Index j = 0; j < k_.size(); ++j) {
      if (k_(j) != 0 || l_(j) != 0) ++c;
    }
    return c;
  }

  /// Squared norms recorded after each grid-rounding step, oldest first.
  const std::vector<Scalar>& norm_history() const { return norm_history_; }

  /// Builds a state from raw coordinates. Each amplitude may exceed unit
  /// magnitude by at most one rounding step: k^2 + l^2 <= Q + 2*floor(sqrt(Q)) + 1.
  static QuantizedState from_coords(int n, GridSpec<Scalar> grid, IntArray k,
                                    IntArray l) {
    if (n < 1 || n > 30) throw BadSpec("qubit count must lie in [1, 30]");
    if (k.size() != dim_of(n) || l.size() != dim_of(n)) {
      throw DimensionMismatch("expected 2^n coordinate pairs");
    }
    const std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(grid.q)));
    const std::int64_t bound = grid.q + 2 * root + 1;
    for (Index j = 0; j < k.size(); ++j) {
      if (k(j) * k(j) + l(j) * l(j) > bound) {
        throw BadSpec("amplitude " + std::to_string(j) + " exceeds unit magnitude");
      }
    }
    QuantizedState s;
    s.n_ = n;
    s.grid_ = grid;
    s.k_ = std::move(k);
    s.l_ = std::move(l);
    s.log_norm();
    return s;
  }

  /// No validation, no initial norm entry; operations that construct
  /// results in place use this and log the norm themselves.
  static QuantizedState unchecked(int n, GridSpec<Scalar> grid, IntArray k,
                                  IntArray l, std::vector<Scalar> history) {
    QuantizedState s;
    s.n_ = n;
    s.grid_ = grid;
    s.k_ = std::move(k);
    s.l_ = std::move(l);
    s.norm_history_ = std::move(history);
    return s;
  }

  IntArray& mutable_k() { return k_; }
  IntArray& mutable_l() { return l_; }
  void log_norm() { norm_history_.push_back(squared_norm()); }

 private:
  int n_ = 0;
  GridSpec<Scalar> grid_{};
  IntArray k_;
  IntArray l_;
  std::vector<Scalar> norm_history_;
};

namespace detail {

template <typename Scalar>
std::int64_t round_component(Scalar value, const GridSpec<Scalar>& grid,
                             std::mt19937_64* rng) {
  const double scaled = static_cast<double>(value / grid.epsilon);
  if (grid.rounding.mode == Rounding::Stochastic) {
    return round_stochastic(scaled, *rng);
  }
  return round_ties_even(scaled);
}

/// Round the exact rational p / 2^n to an integer under the grid policy.
/// The divisor is a power of two, so ties and fractions are exact.
inline std::int64_t round_rational(std::int64_t p, std::int64_t q,
                                   Rounding mode, std::mt19937_64* rng) {
  std::int64_t quot = p / q;
  std::int64_t rem = p % q;
  if (rem < 0) {
    quot -= 1;
    rem += q;
  }
  if (mode == Rounding::Stochastic) {
    const double frac = static_cast<double>(rem) / static_cast<double>(q);
    return quot + (uniform01(*rng) < frac ? 1 : 0);
  }
  if (2 * rem > q) return quot + 1;
  if (2 * rem < q) return quot;
  return (quot % 2 == 0) ? quot : quot + 1;
}

template <typename Scalar>
void invert_about_mean_inplace(DenseState<Scalar>& s) {
  auto& v = s.mutable_amps();
  const std::complex<Scalar> two_m = v.mean() * Scalar(2);
  v = (two_m - v.array()).matrix();
}

/// Mean as an exact integer rational (sum / 2^n), one rounding per
/// component. Appends the post-step norm to the history.
template <typename Scalar>
void invert_about_mean_inplace(QuantizedState<Scalar>& s) {
  const Index d = s.dim();
  auto& k = s.mutable_k();
  auto& l = s.mutable_l();
  std::int64_t sk = 0;
  std::int64_t sl = 0;
  for (Index j = 0; j < d; ++j) {
    sk += k(j);
    sl += l(j);
  }
  const Rounding mode = s.grid().rounding.mode;
  std::mt19937_64 rng;
  if (mode == Rounding::Stochastic) {
    rng = rounding_stream(s.grid().rounding, s.norm_history().size());
  }
  for (Index j = 0; j < d; ++j) {
    k(j) = round_rational(2 * sk - k(j) * d, d, mode, &rng);
    l(j) = round_rational(2 * sl - l(j) * d, d, mode, &rng);
  }
  s.log_norm();
}

}  // namespace detail

/// Snap each component independently to the nearest grid multiple under the
/// grid's rounding policy. No renormalization; the resulting norm is logged.
template <typename Scalar>
QuantizedState<Scalar> quantize(const DenseState<Scalar>& psi,
                                const GridSpec<Scalar>& grid) {
  if (std::abs(psi.squared_norm() - Scalar(1)) > Scalar(1e-6)) {
    throw BadSpec("quantize expects a normalized state");
  }
  const Index d = psi.dim();
  typename QuantizedState<Scalar>::IntArray k(d), l(d);
  std::mt19937_64 rng;
  std::mt19937_64* rng_ptr = nullptr;
  if (grid.rounding.mode == Rounding::Stochastic) {
    rng = detail::rounding_stream(grid.rounding, 0);
    rng_ptr = &rng;
  }
  for (Index j = 0; j < d; ++j) {
    const auto a = psi.amp(j);
    k(j) = detail::round_component(a.real(), grid, rng_ptr);
    l(j) = detail::round_component(a.imag(), grid, rng_ptr);
  }
  auto qs = QuantizedState<Scalar>::unchecked(psi.n(), grid, std::move(k),
                                              std::move(l), {});
  qs.log_norm();
  if (qs.norm_history().back() < Scalar(kVanishThreshold)) {
    throw StateVanished("quantized norm " +
                        std::to_string(static_cast<double>(qs.norm_history().back())) +
                        " below representability threshold");
  }
  return qs;
}

template <typename Scalar>
struct Dequantized {
  DenseState<Scalar> state;   // renormalized to unit L2 norm
  Scalar raw_squared_norm;    // before renormalization
};

template <typename Scalar>
Dequantized<Scalar> dequantize(const QuantizedState<Scalar>& qs) {
  const Scalar raw = qs.squared_norm();
  if (raw <= Scalar(0)) {
    throw StateVanished("cannot dequantize a zero state");
  }
  const Scalar inv = Scalar(1) / std::sqrt(raw);
  typename DenseState<Scalar>::Vector v(qs.dim());
  for (Index j = 0; j < qs.dim(); ++j) {
    v(j) = qs.value(j) * inv;
  }
  return {DenseState<Scalar>::unchecked(qs.n(), std::move(v)), raw};
}

/// lambda_j -> 2*mean - lambda_j; the diffusion reflection of Grover's G.
template <typename Scalar>
DenseState<Scalar> invert_about_mean(const DenseState<Scalar>& s) {
  DenseState<Scalar> out = s;
  detail::invert_about_mean_inplace(out);
  return out;
}

template <typename Scalar>
QuantizedState<Scalar> invert_about_mean(const QuantizedState<Scalar>& s) {
  QuantizedState<Scalar> out = s;
  detail::invert_about_mean_inplace(out);
  return out;
}

template <typename Scalar>
std::complex<Scalar> overlap(const DenseState<Scalar>& a,
                             const DenseState<Scalar>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("overlap requires equal qubit counts");
  return a.amps().dot(b.amps());
}

// --- common constructions -------------------------------------------------

template <typename Scalar = double>
DenseState<Scalar> make_ghz(int n) {
  using Complex = std::complex<Scalar>;
  typename DenseState<Scalar>::Vector v =
      DenseState<Scalar>::Vector::Zero(dim_of(n));
  const Scalar a = Scalar(1) / std::sqrt(Scalar(2));
  v(0) = Complex(a, 0);
  v(dim_of(n) - 1) = Complex(a, 0);
  return DenseState<Scalar>::unchecked(n, std::move(v));
}

template <typename Scalar = double>
DenseState<Scalar> make_bell() {
  return make_ghz<Scalar>(2);
}

/// Tensor product with `a` on the low qubits: index j = jb * 2^{n_a} + ja.
template <typename Scalar>
DenseState<Scalar> tensor(const DenseState<Scalar>& a, const DenseState<Scalar>& b) {
  typename DenseState<Scalar>::Vector v(a.dim() * b.dim());
  for (Index jb = 0; jb < b.dim(); ++jb) {
    for (Index ja = 0; ja < a.dim(); ++ja) {
      v(jb * a.dim() + ja) = a.amp(ja) * b.amp(jb);
    }
  }
  return DenseState<Scalar>::unchecked(a.n() + b.n(), std::move(v));
}

/// Haar-like random state: i.i.d. complex Gaussian components, normalized.
template <typename Scalar = double>
DenseState<Scalar> random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(detail::mix(seed, 0x57A7E5ULL));
  typename DenseState<Scalar>::Vector v(dim_of(n));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Index j = 0; j < v.size(); ++j) {
    v(j) = std::complex<Scalar>(static_cast<Scalar>(gauss(rng)),
                                static_cast<Scalar>(gauss(rng)));
  }
  v /= v.norm();
  return DenseState<Scalar>::unchecked(n, std::move(v));
}

}  // namespace ampq
