// uncertainty.hpp
// The complexity-accuracy trade-off N*log2(1/varepsilon) <= Q, coarse-graining
// of grid states back into traditional wave-function values, and the Grover
// threshold experiment that estimates Q from the largest working qubit count.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ampq/errors.hpp"
#include "ampq/grover.hpp"
#include "ampq/state.hpp"

namespace ampq {

/// The amplitude quantum implied by Q. Accepts Q as a real so values far
/// beyond the 2^62 grid bound (which only constrains simulability) work too.
inline double epsilon_from_q(double q) {
  if (!(q >= 2.0)) throw BadQ("Q must be at least 2");
  return 1.0 / std::sqrt(q);
}

/// Best representation accuracy the relation admits: varepsilon = 2^{-Q/N}.
/// The result may be subnormal for large Q/N; that is intentional.
inline double accuracy_bound(double n_dim, double q) {
  if (!(n_dim >= 1.0)) throw BadSpec("kernel dimension must be at least 1");
  if (!(q >= 1.0)) throw BadSpec("Q must be at least 1");
  return std::exp2(-q / n_dim);
}

/// One evaluation of the relation N*log2(1/varepsilon) <= Q.
struct RelationCheck {
  double n_kernel = 0;    // kernel dimension N (2^A or caller-supplied)
  double varepsilon = 0;  // accuracy of the traditional representation
  double q = 0;
  double slack = 0;  // Q - N*log2(1/varepsilon)
  bool holds = false;
};

inline RelationCheck check_relation(double n_dim, double varepsilon, double q) {
  if (!(n_dim >= 1.0)) throw BadSpec("kernel dimension must be at least 1");
  if (!(varepsilon > 0.0 && varepsilon < 1.0)) {
    throw BadSpec("accuracy must lie strictly between 0 and 1");
  }
  RelationCheck r;
  r.n_kernel = n_dim;
  r.varepsilon = varepsilon;
  r.q = q;
  // log2 applied directly: 1/varepsilon would overflow for subnormal inputs.
  r.slack = q + n_dim * std::log2(varepsilon);
  r.holds = r.slack >= 0.0;
  return r;
}

namespace detail {

inline void check_bins(Index dim, const std::vector<Index>& bin_sizes) {
  Index total = 0;
  for (Index b : bin_sizes) {
    if (b <= 0) throw BadPartition("bin sizes must be positive");
    total += b;
  }
  if (total != dim) {
    throw BadPartition("bin sizes must sum to the state dimension");
  }
}

}  // namespace detail

/// Sum of grid coordinates over each contiguous segment, exact integer
/// arithmetic. Bins are given by their sizes, in order, and must tile
/// [0, 2^n) completely.
template <typename Scalar>
std::vector<QuantizedAmplitude> coarse_grain_coords(
    const QuantizedState<Scalar>& qs, const std::vector<Index>& bin_sizes) {
  detail::check_bins(qs.dim(), bin_sizes);
  std::vector<QuantizedAmplitude> out;
  out.reserve(bin_sizes.size());
  Index j = 0;
  for (Index b : bin_sizes) {
    QuantizedAmplitude acc;
    for (Index end = j + b; j < end; ++j) {
      acc.k += qs.amp(j).k;
      acc.l += qs.amp(j).l;
    }
    out.push_back(acc);
  }
  return out;
}

/// The traditional wave-function value per segment: the plain (unnormalized)
/// sum of the quantized amplitude values within the segment.
template <typename Scalar>
std::vector<std::complex<Scalar>> coarse_grain(
    const QuantizedState<Scalar>& qs, const std::vector<Index>& bin_sizes) {
  std::vector<std::complex<Scalar>> out;
  const auto coords = coarse_grain_coords(qs, bin_sizes);
  out.reserve(coords.size());
  for (const QuantizedAmplitude& c : coords) {
    out.emplace_back(Scalar(c.k) * qs.grid().epsilon,
                     Scalar(c.l) * qs.grid().epsilon);
  }
  return out;
}

// --- the threshold experiment -----------------------------------------------

enum class ThresholdCriterion { FirstStep, FullRun };

/// Full-run pass bar on the final success probability: a majority-vote
/// readout succeeds above one half.
inline constexpr double kFullRunPassBar = 0.5;

struct ThresholdPoint {
  int n = 0;
  /// First-step criterion: fraction of runs with a strict target excess.
  /// Full-run criterion: minimum final success probability across runs.
  double metric = 0;
  bool pass = false;
  bool vanished = false;  // the uniform state was unrepresentable at this n
};

struct ThresholdResult {
  ThresholdCriterion criterion = ThresholdCriterion::FirstStep;
  std::int64_t q = 0;
  std::vector<ThresholdPoint> points;          // n = 2 .. n_max, in order
  std::optional<int> n_star;                   // largest passing n
  std::optional<std::int64_t> q_estimate;      // 2^{n_star}
  std::vector<int> non_monotone;               // failing n below n_star
};

/// Runs quantized Grover search at grid Q for n = 2..n_max with randomized
/// targets (runs_per_n independent draws) and reports the largest n passing
/// the chosen criterion. A point passes only if every run passes; a vanished
/// initial state counts as failure.
inline ThresholdResult grover_threshold(std::int64_t q,
                                        ThresholdCriterion criterion,
                                        int n_max, int runs_per_n = 8,
                                        std::uint64_t seed = 0) {
  if (n_max > 24) throw TooLarge("threshold scan is limited to n_max <= 24");
  if (n_max < 2) throw BadSpec("threshold scan needs n_max >= 2");
  if (runs_per_n < 1) throw BadSpec("runs_per_n must be at least 1");

  ThresholdResult result;
  result.criterion = criterion;
  result.q = q;

  const GridSpec<double> grid = GridSpec<double>::make(q);
  for (int n = 2; n <= n_max; ++n) {
    ThresholdPoint point;
    point.n = n;
    bool all_pass = true;
    double metric = (criterion == ThresholdCriterion::FullRun) ? 1.0 : 0.0;
    for (int run = 0; run < runs_per_n; ++run) {
      std::mt19937_64 rng(detail::mix(detail::mix(seed, static_cast<std::uint64_t>(n)),
                                      static_cast<std::uint64_t>(run)));
      GroverConfig<double> cfg;
      cfg.n = n;
      cfg.target = static_cast<Index>(rng() & (dim_of(n) - 1));
      cfg.mode = GroverMode::Quantized;
      cfg.grid = grid;
      if (criterion == ThresholdCriterion::FirstStep) cfg.iterations = 1;
      bool run_pass = false;
      double run_metric = 0.0;
      try {
        const auto traj = grover_run(cfg);
        if (criterion == ThresholdCriterion::FirstStep) {
          run_pass = success_first_step(traj);
          run_metric = run_pass ? 1.0 : 0.0;
        } else {
          run_metric = traj.final_success_probability();
          run_pass = run_metric >= kFullRunPassBar;
        }
      } catch (const StateVanished&) {
        point.vanished = true;
      }
      all_pass = all_pass && run_pass;
      if (criterion == ThresholdCriterion::FirstStep) {
        metric += run_metric / runs_per_n;
      } else {
        metric = std::min(metric, run_metric);
      }
    }
    point.metric = metric;
    point.pass = all_pass;
    result.points.push_back(point);
    if (point.pass) result.n_star = n;
  }

  if (result.n_star) {
    result.q_estimate = std::int64_t{1} << *result.n_star;
    for (const ThresholdPoint& p : result.points) {
      if (p.n < *result.n_star && !p.pass) result.non_monotone.push_back(p.n);
    }
  }
  return result;
}

}  // namespace ampq
