// complexity.hpp
// Entanglement-complexity calculus: product-state tests across qubit cuts,
// the state complexity C (size of the largest entangled tensor factor),
// kernel extraction, basis-label permutations, and the absolute-complexity
// search (exact for tiny systems, a gate-generated heuristic bound beyond).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ampq/errors.hpp"
#include "ampq/state.hpp"

namespace ampq {

/// Default tolerance on the second singular value for rank-1 decisions.
inline constexpr double kDefaultRankTol = 1e-10;

/// Rank tolerance for states that came off an amplitude grid: rounding can
/// displace each component by up to epsilon/2, so the cut matrix of a true
/// product state need not be exactly rank one.
template <typename Scalar>
Scalar default_rank_tol(const GridSpec<Scalar>& grid) {
  return std::max(Scalar(kDefaultRankTol), grid.epsilon / Scalar(2));
}

/// A subset of the qubit wires, as a bitmask (bit q <-> qubit q).
struct QubitSubset {
  std::uint32_t mask = 0;

  static QubitSubset from_mask(std::uint32_t m) { return {m}; }
  static QubitSubset single(int q) { return {std::uint32_t{1} << q}; }

  int count() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }
  bool contains(int q) const { return (mask >> q) & 1u; }
  QubitSubset complement_in(int n) const {
    return {((std::uint32_t{1} << n) - 1u) & ~mask};
  }
  std::vector<int> qubits() const {
    std::vector<int> out;
    for (int q = 0; q < 32; ++q) {
      if (contains(q)) out.push_back(q);
    }
    return out;
  }
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int q : qubits()) {
      if (!first) s += ",";
      s += "q" + std::to_string(q);
      first = false;
    }
    return s + "}";
  }

  friend auto operator<=>(const QubitSubset&, const QubitSubset&) = default;
};

/// Complexity report: the value C, every carrier subset achieving it
/// (ascending bitmask order), and the corresponding entangled factors.
/// Kernel state k lives on carriers[k]'s qubits in ascending wire order.
template <typename Scalar = double>
struct KernelReport {
  int complexity = 1;
  std::vector<QubitSubset> carriers;
  std::vector<DenseState<Scalar>> kernel_states;
};

namespace detail {

inline void check_partition(int n, QubitSubset m1) {
  const std::uint32_t all = (std::uint32_t{1} << n) - 1u;
  if ((m1.mask & ~all) != 0) throw BadPartition("subset names qubits beyond n");
  if (m1.mask == 0 || m1.mask == all) {
    throw BadPartition("bipartition sides must both be nonempty");
  }
}

/// Reshape the amplitude vector across the cut (m1 | complement): rows are
/// indexed by the m1-bit configuration, columns by the rest, each side
/// packed in ascending wire order.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> cut_matrix(
    const DenseState<Scalar>& psi, QubitSubset m1) {
  const int n = psi.n();
  int row_pos[32] = {};
  int col_pos[32] = {};
  int rbits = 0;
  int cbits = 0;
  for (int q = 0; q < n; ++q) {
    if (m1.contains(q)) {
      row_pos[q] = rbits++;
    } else {
      col_pos[q] = cbits++;
    }
  }
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> a(
      Index{1} << rbits, Index{1} << cbits);
  for (Index j = 0; j < psi.dim(); ++j) {
    Index row = 0;
    Index col = 0;
    for (int q = 0; q < n; ++q) {
      const Index bit = (j >> q) & 1;
      if (m1.contains(q)) {
        row |= bit << row_pos[q];
      } else {
        col |= bit << col_pos[q];
      }
    }
    a(row, col) = psi.amp(j);
  }
  return a;
}

/// Second singular value of the cut matrix; the rank-1 (product) criterion
/// compares this against the tolerance. Jacobi for small problems, the
/// divide-and-conquer kernel for larger ones.
template <typename Scalar>
Scalar second_singular_value(
    const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& a) {
  using Mat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  if (std::min(a.rows(), a.cols()) <= 16) {
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(1);
  }
  Eigen::BDCSVD<Mat> svd(a);
  return svd.singularValues()(1);
}

/// Left factor of a (near-)rank-1 cut matrix: the leading left singular
/// vector, rotated so its largest component is real and positive.
template <typename Scalar>
DenseState<Scalar> extract_factor(const DenseState<Scalar>& psi, QubitSubset m1) {
  using Mat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat a = cut_matrix(psi, m1);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  typename DenseState<Scalar>::Vector u = svd.matrixU().col(0);
  Index imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  const std::complex<Scalar> pivot = u(imax);
  if (std::abs(pivot) > Scalar(0)) {
    u *= std::conj(pivot) / std::abs(pivot);
  }
  return DenseState<Scalar>::unchecked(m1.count(), std::move(u));
}

/// Calls fn(mask) for every subset of `pool` of the given size; masks are
/// produced in ascending order.
template <typename Fn>
void for_each_subset_of_size(std::uint32_t pool, int size, Fn&& fn) {
  std::vector<int> pos;
  for (int q = 0; q < 32; ++q) {
    if ((pool >> q) & 1u) pos.push_back(q);
  }
  const int m = static_cast<int>(pos.size());
  if (size < 0 || size > m) return;
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= std::uint32_t{1} << pos[i];
    fn(mask);
    // next combination in lexicographic order
    int i = size - 1;
    while (i >= 0 && idx[i] == m - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// True iff psi factors across the cut (m1 | rest): the reshaped amplitude
/// matrix has second singular value <= tol.
template <typename Scalar>
bool is_product(const DenseState<Scalar>& psi, QubitSubset m1,
                Scalar tol = Scalar(kDefaultRankTol)) {
  detail::check_partition(psi.n(), m1);
  return detail::second_singular_value(detail::cut_matrix(psi, m1)) <= tol;
}

/// State complexity: the size of the largest entangled tensor factor.
///
/// The state is split into its finest tensor factorization by repeatedly
/// finding the smallest factorizable subset containing the lowest unassigned
/// wire; C is the size of the largest block, and every block of that size is
/// a carrier. A full product of single-qubit states yields C = 1 with all
/// singleton carriers.
template <typename Scalar>
KernelReport<Scalar> complexity_C(const DenseState<Scalar>& psi,
                                  Scalar tol = Scalar(kDefaultRankTol)) {
  const int n = psi.n();
  if (n > 14) throw TooLarge("complexity_C is limited to n <= 14");

  std::vector<std::uint32_t> blocks;
  std::uint32_t remaining = (std::uint32_t{1} << n) - 1u;
  while (remaining != 0) {
    const int q = std::countr_zero(remaining);
    const int left = std::popcount(remaining);
    std::uint32_t block = 0;
    for (int size = 1; size < left && block == 0; ++size) {
      detail::for_each_subset_of_size(
          remaining & ~(std::uint32_t{1} << q), size - 1,
          [&](std::uint32_t sub) {
            if (block != 0) return;
            const std::uint32_t candidate = sub | (std::uint32_t{1} << q);
            if (is_product(psi, QubitSubset{candidate}, tol)) block = candidate;
          });
    }
    if (block == 0) block = remaining;  // nothing smaller splits off
    blocks.push_back(block);
    remaining &= ~block;
  }

  KernelReport<Scalar> report;
  for (std::uint32_t b : blocks) {
    report.complexity = std::max(report.complexity, std::popcount(b));
  }
  for (std::uint32_t b : blocks) {
    if (std::popcount(b) != report.complexity) continue;
    report.carriers.push_back(QubitSubset{b});
  }
  std::sort(report.carriers.begin(), report.carriers.end());
  for (QubitSubset c : report.carriers) {
    if (c.count() == n) {
      report.kernel_states.push_back(psi);
    } else {
      report.kernel_states.push_back(detail::extract_factor(psi, c));
    }
  }
  return report;
}

/// Grid-sourced entry point: dequantizes and tests at a tolerance no finer
/// than half the amplitude quantum.
template <typename Scalar>
KernelReport<Scalar> complexity_C(const QuantizedState<Scalar>& qs) {
  return complexity_C(dequantize(qs).state, default_rank_tol(qs.grid()));
}

// --- basis-label permutations ----------------------------------------------

/// A reversible classical gate acting on basis labels.
struct Gate {
  enum class Kind { X, Cnot, Toffoli };

  Kind kind = Kind::X;
  int target = 0;
  int control1 = -1;
  int control2 = -1;

  static Gate x(int target) { return {Kind::X, target, -1, -1}; }
  static Gate cnot(int control, int target) {
    return {Kind::Cnot, target, control, -1};
  }
  static Gate toffoli(int control1, int control2, int target) {
    return {Kind::Toffoli, target, control1, control2};
  }

  Index apply(Index j) const {
    switch (kind) {
      case Kind::X:
        return j ^ (Index{1} << target);
      case Kind::Cnot:
        return ((j >> control1) & 1) ? j ^ (Index{1} << target) : j;
      case Kind::Toffoli:
        return (((j >> control1) & 1) && ((j >> control2) & 1))
                   ? j ^ (Index{1} << target)
                   : j;
    }
    return j;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::X:
        return "X(q" + std::to_string(target) + ")";
      case Kind::Cnot:
        return "CNOT(q" + std::to_string(control1) + ",q" +
               std::to_string(target) + ")";
      case Kind::Toffoli:
        return "TOFFOLI(q" + std::to_string(control1) + ",q" +
               std::to_string(control2) + ",q" + std::to_string(target) + ")";
    }
    return "?";
  }
};

/// A permutation tau of the 2^n basis labels, stored as an explicit table.
class BasisPermutation {
 public:
  BasisPermutation() = default;

  static BasisPermutation identity(int n) {
    BasisPermutation p;
    p.n_ = n;
    p.table_.resize(dim_of(n));
    std::iota(p.table_.begin(), p.table_.end(), Index{0});
    return p;
  }

  static BasisPermutation from_table(int n, std::vector<Index> table) {
    if (static_cast<Index>(table.size()) != dim_of(n)) {
      throw DimensionMismatch("permutation table must have 2^n entries");
    }
    std::vector<bool> seen(table.size(), false);
    for (Index v : table) {
      if (v < 0 || v >= dim_of(n) || seen[v]) {
        throw BadSpec("permutation table is not a bijection on [0, 2^n)");
      }
      seen[v] = true;
    }
    BasisPermutation p;
    p.n_ = n;
    p.table_ = std::move(table);
    return p;
  }

  static BasisPermutation from_gates(int n, const std::vector<Gate>& gates) {
    BasisPermutation p = identity(n);
    for (Index j = 0; j < p.dim(); ++j) {
      Index v = j;
      for (const Gate& g : gates) v = g.apply(v);
      p.table_[j] = v;
    }
    return p;
  }

  /// Composition: (this->then(next))(j) = next(this(j)).
  BasisPermutation then(const BasisPermutation& next) const {
    if (n_ != next.n_) {
      throw DimensionMismatch("cannot compose permutations of different sizes");
    }
    BasisPermutation p;
    p.n_ = n_;
    p.table_.resize(table_.size());
    for (Index j = 0; j < dim(); ++j) p.table_[j] = next.table_[table_[j]];
    return p;
  }

  int n() const { return n_; }
  Index dim() const { return static_cast<Index>(table_.size()); }
  Index operator()(Index j) const { return table_[j]; }
  const std::vector<Index>& table() const { return table_; }

 private:
  int n_ = 0;
  std::vector<Index> table_;
};

/// Quasi-particle representation tau|psi>: the amplitude of |j> moves to
/// |tau(j)>.
template <typename Scalar>
DenseState<Scalar> apply_basis_permutation(const DenseState<Scalar>& psi,
                                           const BasisPermutation& tau) {
  if (tau.dim() != psi.dim()) {
    throw DimensionMismatch("permutation size does not match the state");
  }
  typename DenseState<Scalar>::Vector v(psi.dim());
  for (Index j = 0; j < psi.dim(); ++j) v(tau(j)) = psi.amp(j);
  return DenseState<Scalar>::unchecked(psi.n(), std::move(v));
}

namespace detail {

template <typename Scalar>
DenseState<Scalar> apply_gate(const DenseState<Scalar>& psi, Gate g) {
  typename DenseState<Scalar>::Vector v(psi.dim());
  for (Index j = 0; j < psi.dim(); ++j) v(g.apply(j)) = psi.amp(j);
  return DenseState<Scalar>::unchecked(psi.n(), std::move(v));
}

/// Every X, CNOT, and Toffoli on n wires (Toffoli controls unordered), in a
/// fixed deterministic order.
inline std::vector<Gate> gate_catalog(int n) {
  std::vector<Gate> gates;
  for (int t = 0; t < n; ++t) gates.push_back(Gate::x(t));
  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < n; ++t) {
      if (t != c) gates.push_back(Gate::cnot(c, t));
    }
  }
  for (int c1 = 0; c1 < n; ++c1) {
    for (int c2 = c1 + 1; c2 < n; ++c2) {
      for (int t = 0; t < n; ++t) {
        if (t != c1 && t != c2) gates.push_back(Gate::toffoli(c1, c2, t));
      }
    }
  }
  return gates;
}

}  // namespace detail

/// Result of an absolute-complexity search: the best complexity found and a
/// permutation witnessing it.
struct AbsComplexityResult {
  int complexity = 1;
  BasisPermutation witness;
};

/// Minimum complexity over all (2^n)! basis permutations, by exhaustive
/// enumeration. Only feasible for n <= 3 (8! = 40320 tables).
template <typename Scalar>
AbsComplexityResult abs_complexity_exact(const DenseState<Scalar>& psi,
                                         Scalar tol = Scalar(kDefaultRankTol)) {
  const int n = psi.n();
  if (n > 3) throw TooLarge("exact absolute complexity is limited to n <= 3");

  std::vector<Index> table(dim_of(n));
  std::iota(table.begin(), table.end(), Index{0});
  AbsComplexityResult best{complexity_C(psi, tol).complexity,
                           BasisPermutation::identity(n)};
  while (best.complexity > 1 && std::next_permutation(table.begin(), table.end())) {
    const auto tau = BasisPermutation::from_table(n, table);
    const int c = complexity_C(apply_basis_permutation(psi, tau), tol).complexity;
    if (c < best.complexity) best = {c, tau};
  }
  return best;
}

/// Heuristic upper bound on the absolute complexity: greedy first-improvement
/// descent over single X/CNOT/Toffoli basis-label gates, with seeded random
/// restarts (a short random gate prefix) when the descent stalls. `budget`
/// caps the number of complexity evaluations; the identity baseline is free,
/// so the result never exceeds complexity_C(psi).
template <typename Scalar>
AbsComplexityResult abs_complexity_bound(const DenseState<Scalar>& psi,
                                         long budget, std::uint64_t seed,
                                         Scalar tol = Scalar(kDefaultRankTol)) {
  const int n = psi.n();
  if (n > 14) throw TooLarge("absolute-complexity search is limited to n <= 14");

  const int base = complexity_C(psi, tol).complexity;
  AbsComplexityResult best{base, BasisPermutation::identity(n)};
  if (budget <= 0 || base == 1) return best;

  const std::vector<Gate> catalog = detail::gate_catalog(n);
  std::mt19937_64 rng(detail::mix(seed, 0xAB5C09D1ULL));
  std::vector<std::size_t> order(catalog.size());
  long evals = 0;

  bool first_start = true;
  while (evals < budget && best.complexity > 1) {
    DenseState<Scalar> state = psi;
    std::vector<Gate> gates;
    int current;
    if (first_start) {
      current = base;
      first_start = false;
    } else {
      const int prefix = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < prefix; ++i) {
        const Gate g = catalog[rng() % catalog.size()];
        state = detail::apply_gate(state, g);
        gates.push_back(g);
      }
      current = complexity_C(state, tol).complexity;
      ++evals;
    }

    bool improved = true;
    while (improved && current > 1 && evals < budget) {
      improved = false;
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t idx : order) {
        if (evals >= budget) break;
        DenseState<Scalar> candidate = detail::apply_gate(state, catalog[idx]);
        const int c = complexity_C(candidate, tol).complexity;
        ++evals;
        if (c < current) {
          state = std::move(candidate);
          gates.push_back(catalog[idx]);
          current = c;
          improved = true;
          break;
        }
      }
    }

    if (current < best.complexity) {
      best = {current, BasisPermutation::from_gates(n, gates)};
    }
  }
  return best;
}

}  // namespace ampq
