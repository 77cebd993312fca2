// grid.hpp
// The amplitude grid: the constant Q, the amplitude quantum epsilon = 1/sqrt(Q),
// and the rounding policies that map real values onto the grid.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "ampq/errors.hpp"

namespace ampq {

enum class Rounding {
  NearestTiesEven,  // deterministic default
  Stochastic        // round up with probability equal to the fractional part
};

struct RoundingPolicy {
  Rounding mode = Rounding::NearestTiesEven;
  std::uint64_t seed = 0;  // stream seed, only used in stochastic mode
};

/// Largest admissible Q: integer grid coordinates |k|, |l| <= sqrt(Q) must
/// fit comfortably in 64-bit signed integers.
inline constexpr std::int64_t kMaxQ = std::int64_t{1} << 62;

/// Squared-norm floor below which a freshly quantized state counts as
/// unrepresentable on the grid.
inline constexpr double kVanishThreshold = 0.5;

template <typename Scalar = double>
struct GridSpec {
  std::int64_t q = 0;          // the constant Q
  Scalar epsilon = Scalar(0);  // amplitude quantum, 1/sqrt(Q)
  RoundingPolicy rounding{};

  static GridSpec make(std::int64_t q, RoundingPolicy rounding = {}) {
    if (q < 2 || q > kMaxQ) {
      throw BadQ("Q must lie in [2, 2^62], got " + std::to_string(q));
    }
    GridSpec g;
    g.q = q;
    g.epsilon = Scalar(1) / std::sqrt(Scalar(q));
    g.rounding = rounding;
    return g;
  }
};

namespace detail {

/// Round to the nearest integer, ties to even. Ties are exact because both
/// the floor and the 0.5 fraction are representable.
inline std::int64_t round_ties_even(double x) {
  const double f = std::floor(x);
  const double frac = x - f;
  const auto lo = static_cast<std::int64_t>(f);
  if (frac > 0.5) return lo + 1;
  if (frac < 0.5) return lo;
  return (lo % 2 == 0) ? lo : lo + 1;
}

/// SplitMix64 step; used to derive independent seed streams from counters.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  s ^= b + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return splitmix64(s);
}

/// Uniform draw in [0, 1) with 53 random bits; avoids the distribution
/// classes so the stream is identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int64_t round_stochastic(double x, std::mt19937_64& rng) {
  const double f = std::floor(x);
  const double frac = x - f;
  return static_cast<std::int64_t>(f) + (uniform01(rng) < frac ? 1 : 0);
}

/// One grid-rounding pass gets its own RNG stream, derived from the policy
/// seed and the index of the step that performs the rounding.
inline std::mt19937_64 rounding_stream(const RoundingPolicy& policy,
                                       std::uint64_t step) {
  return std::mt19937_64(mix(policy.seed, step));
}

}  // namespace detail
}  // namespace ampq
