#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ampq/complexity.hpp"
#include "ampq/state.hpp"

using namespace ampq;
using Complex = std::complex<double>;

namespace {

DenseState<double> make_w3() {
  DenseState<double>::Vector v = DenseState<double>::Vector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  v(1) = v(2) = v(4) = Complex(a, 0);
  return DenseState<double>::unchecked(3, std::move(v));
}

double fidelity(const DenseState<double>& a, const DenseState<double>& b) {
  return std::abs(overlap(a, b));
}

/// Independent product test: a cut is a product iff every 2x2 minor of the
/// reshaped amplitude matrix vanishes (rank one).
bool is_product_by_minors(const DenseState<double>& psi, QubitSubset m1) {
  const auto a = detail::cut_matrix(psi, m1);
  double worst = 0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = i + 1; k < a.rows(); ++k) {
      for (Index j = 0; j < a.cols(); ++j) {
        for (Index l = j + 1; l < a.cols(); ++l) {
          worst = std::max(worst,
                           std::abs(a(i, j) * a(k, l) - a(i, l) * a(k, j)));
        }
      }
    }
  }
  return worst < 1e-8;
}

}  // namespace

TEST_CASE("qubit subsets") {
  const auto s = QubitSubset::from_mask(0b101u);
  CHECK(s.count() == 2);
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
  CHECK(s.qubits() == std::vector<int>{0, 2});
  CHECK(s.to_string() == "{q0,q2}");
  CHECK(s.complement_in(3).mask == 0b010u);
  CHECK(QubitSubset::single(2).mask == 0b100u);
  CHECK(QubitSubset{0b001u} < QubitSubset{0b010u});
}

TEST_CASE("is_product") {
  SUBCASE("Bell pair does not factor") {
    CHECK_FALSE(is_product(make_bell(), QubitSubset::single(0)));
  }
  SUBCASE("an unentangled wire factors off") {
    const auto psi = tensor(DenseState<double>::basis(1, 0), make_bell());
    CHECK(is_product(psi, QubitSubset::single(0)));
    CHECK_FALSE(is_product(psi, QubitSubset::single(1)));
    CHECK(is_product(psi, QubitSubset::from_mask(0b110u)));
  }
  SUBCASE("random product states factor across the seam only") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto psi = tensor(random_state(2, seed), random_state(2, seed + 100));
      CHECK(is_product(psi, QubitSubset::from_mask(0b0011u)));
      CHECK_FALSE(is_product(psi, QubitSubset::from_mask(0b0101u)));
    }
  }
  SUBCASE("the test is symmetric in the two sides") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto psi = random_state(4, seed);
      for (std::uint32_t m = 1; m < 15; ++m) {
        CHECK(is_product(psi, QubitSubset{m}) ==
              is_product(psi, QubitSubset{m}.complement_in(4)));
      }
    }
  }
  SUBCASE("agrees with the 2x2-minor criterion") {
    std::vector<DenseState<double>> cases;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      cases.push_back(random_state(4, seed));
      cases.push_back(tensor(random_state(2, seed), random_state(2, seed + 50)));
      cases.push_back(tensor(random_state(1, seed), random_state(3, seed + 90)));
    }
    cases.push_back(make_ghz(4));
    for (const auto& psi : cases) {
      for (std::uint32_t m = 1; m < 15; ++m) {
        const QubitSubset cut{m};
        CHECK(is_product(psi, cut) == is_product_by_minors(psi, cut));
      }
    }
  }
  SUBCASE("partition validation") {
    CHECK_THROWS_AS(is_product(make_bell(), QubitSubset{0u}), BadPartition);
    CHECK_THROWS_AS(is_product(make_bell(), QubitSubset{0b11u}), BadPartition);
    CHECK_THROWS_AS(is_product(make_bell(), QubitSubset{0b100u}), BadPartition);
  }
}

TEST_CASE("complexity of product and entangled states") {
  SUBCASE("full product state") {
    const auto r = complexity_C(DenseState<double>::basis(3, 0));
    CHECK(r.complexity == 1);
    REQUIRE(r.carriers.size() == 3);
    CHECK(r.carriers[0].mask == 0b001u);
    CHECK(r.carriers[1].mask == 0b010u);
    CHECK(r.carriers[2].mask == 0b100u);
    for (const auto& k : r.kernel_states) {
      CHECK(fidelity(k, DenseState<double>::basis(1, 0)) ==
            doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("Bell pair with a spectator wire") {
    const auto r = complexity_C(tensor(make_bell(), DenseState<double>::basis(1, 0)));
    CHECK(r.complexity == 2);
    REQUIRE(r.carriers.size() == 1);
    CHECK(r.carriers[0].mask == 0b011u);
    CHECK(fidelity(r.kernel_states[0], make_bell()) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("the spectator can sit on the low wire too") {
    const auto r = complexity_C(tensor(DenseState<double>::basis(1, 0), make_bell()));
    CHECK(r.complexity == 2);
    REQUIRE(r.carriers.size() == 1);
    CHECK(r.carriers[0].mask == 0b110u);
  }
  SUBCASE("GHZ states are maximally blocky") {
    for (int n = 2; n <= 8; ++n) {
      const auto r = complexity_C(make_ghz(n));
      CAPTURE(n);
      CHECK(r.complexity == n);
      REQUIRE(r.carriers.size() == 1);
      CHECK(r.carriers[0].count() == n);
      CHECK(fidelity(r.kernel_states[0], make_ghz(n)) ==
            doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("W state") { CHECK(complexity_C(make_w3()).complexity == 3); }
  SUBCASE("two Bell pairs give two carriers") {
    const auto r = complexity_C(tensor(make_bell(), make_bell()));
    CHECK(r.complexity == 2);
    REQUIRE(r.carriers.size() == 2);
    CHECK(r.carriers[0].mask == 0b0011u);
    CHECK(r.carriers[1].mask == 0b1100u);
    for (const auto& k : r.kernel_states) {
      CHECK(fidelity(k, make_bell()) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(complexity_C(DenseState<double>::basis(15, 0)), TooLarge);
  }
}

TEST_CASE("complexity from the grid uses a grid-aware tolerance") {
  CHECK(default_rank_tol(GridSpec<double>::make(4)) == doctest::Approx(0.25));
  CHECK(default_rank_tol(GridSpec<double>::make(std::int64_t{1} << 40)) ==
        doctest::Approx(1e-10));
  const auto grid = GridSpec<double>::make(std::int64_t{1} << 20);
  CHECK(complexity_C(quantize(make_ghz(3), grid)).complexity == 3);
  const auto prod = tensor(make_bell(), DenseState<double>::basis(1, 0));
  const auto r = complexity_C(quantize(prod, grid));
  CHECK(r.complexity == 2);
  CHECK(r.carriers[0].mask == 0b011u);
}

TEST_CASE("gates act on basis labels") {
  CHECK(Gate::x(0).apply(0b00) == 0b01);
  CHECK(Gate::x(1).apply(0b01) == 0b11);
  CHECK(Gate::cnot(0, 1).apply(0b01) == 0b11);
  CHECK(Gate::cnot(0, 1).apply(0b10) == 0b10);
  CHECK(Gate::toffoli(0, 1, 2).apply(0b011) == 0b111);
  CHECK(Gate::toffoli(0, 1, 2).apply(0b010) == 0b010);
  CHECK(Gate::x(0).to_string() == "X(q0)");
}

TEST_CASE("basis permutations") {
  SUBCASE("from_table validates bijections") {
    CHECK_NOTHROW(BasisPermutation::from_table(1, {1, 0}));
    CHECK_THROWS_AS(BasisPermutation::from_table(1, {0, 0}), BadSpec);
    CHECK_THROWS_AS(BasisPermutation::from_table(1, {0, 2}), BadSpec);
    CHECK_THROWS_AS(BasisPermutation::from_table(2, {0, 1}), DimensionMismatch);
  }
  SUBCASE("gate composition matches sequential application") {
    const std::vector<Gate> gates = {Gate::x(0), Gate::cnot(0, 2), Gate::x(1)};
    const auto tau = BasisPermutation::from_gates(3, gates);
    for (Index j = 0; j < 8; ++j) {
      Index expect = j;
      for (const Gate& g : gates) expect = g.apply(expect);
      CHECK(tau(j) == expect);
    }
  }
  SUBCASE("then() composes left to right") {
    const auto a = BasisPermutation::from_gates(2, {Gate::x(0)});
    const auto b = BasisPermutation::from_gates(2, {Gate::cnot(0, 1)});
    const auto ab = a.then(b);
    for (Index j = 0; j < 4; ++j) CHECK(ab(j) == b(a(j)));
  }
  SUBCASE("application moves amplitudes without changing their multiset") {
    const auto psi = random_state(3, 5);
    const auto tau = BasisPermutation::from_gates(3, {Gate::cnot(1, 0), Gate::x(2)});
    const auto out = apply_basis_permutation(psi, tau);
    for (Index j = 0; j < 8; ++j) {
      CHECK(std::abs(out.amp(tau(j)) - psi.amp(j)) < 1e-15);
    }
    CHECK_THROWS_AS(
        apply_basis_permutation(DenseState<double>::uniform(2), tau),
        DimensionMismatch);
  }
  SUBCASE("a CNOT disentangles the Bell pair") {
    const auto out = detail::apply_gate(make_bell(), Gate::cnot(0, 1));
    CHECK(complexity_C(out).complexity == 1);
    CHECK(out.amp(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(out.amp(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("complexity is invariant under wire relabeling") {
    // swap wires q0 and q2 on a Bell-pair-plus-spectator state
    std::vector<Index> table(8);
    for (Index j = 0; j < 8; ++j) {
      table[j] = ((j & 1) << 2) | (j & 2) | ((j >> 2) & 1);
    }
    const auto tau = BasisPermutation::from_table(3, table);
    const auto psi = tensor(make_bell(), DenseState<double>::basis(1, 0));
    const auto moved = apply_basis_permutation(psi, tau);
    const auto r = complexity_C(moved);
    CHECK(r.complexity == 2);
    CHECK(r.carriers[0].mask == 0b110u);  // the pair now lives on q1, q2
  }
}

TEST_CASE("exact absolute complexity") {
  SUBCASE("product states are already minimal") {
    const auto r = abs_complexity_exact(DenseState<double>::basis(2, 3));
    CHECK(r.complexity == 1);
    CHECK(r.witness.table() == BasisPermutation::identity(2).table());
  }
  SUBCASE("Bell and GHZ are products in disguise") {
    const auto bell = abs_complexity_exact(make_bell());
    CHECK(bell.complexity == 1);
    CHECK(complexity_C(apply_basis_permutation(make_bell(), bell.witness))
              .complexity == 1);
    const auto ghz = abs_complexity_exact(make_ghz(3));
    CHECK(ghz.complexity == 1);
    CHECK(complexity_C(apply_basis_permutation(make_ghz(3), ghz.witness))
              .complexity == 1);
  }
  SUBCASE("the W state is not: no relabeling beats two") {
    const auto r = abs_complexity_exact(make_w3());
    CHECK(r.complexity == 2);
    CHECK(complexity_C(apply_basis_permutation(make_w3(), r.witness))
              .complexity == 2);
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(abs_complexity_exact(make_ghz(4)), TooLarge);
  }
}

TEST_CASE("absolute complexity bound") {
  SUBCASE("GHZ factorizes within a small budget") {
    for (int n : {4, 8}) {
      const auto r = abs_complexity_bound(make_ghz(n), 10000, 7);
      CAPTURE(n);
      CHECK(r.complexity == 1);
      CHECK(complexity_C(apply_basis_permutation(make_ghz(n), r.witness))
                .complexity == 1);
    }
  }
  SUBCASE("two Bell pairs factorize too") {
    CHECK(abs_complexity_bound(tensor(make_bell(), make_bell()), 10000, 1)
              .complexity == 1);
  }
  SUBCASE("zero budget returns the plain complexity with an identity witness") {
    const auto r = abs_complexity_bound(make_ghz(4), 0, 9);
    CHECK(r.complexity == 4);
    CHECK(r.witness.table() == BasisPermutation::identity(4).table());
  }
  SUBCASE("never exceeds the plain complexity, never undercuts the exact value") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto psi = random_state(3, seed);
      const int exact = abs_complexity_exact(psi).complexity;
      const int plain = complexity_C(psi).complexity;
      const int bound = abs_complexity_bound(psi, 500, seed).complexity;
      CAPTURE(seed);
      CHECK(bound <= plain);
      CHECK(bound >= exact);
    }
    const int w = abs_complexity_bound(make_w3(), 2000, 11).complexity;
    CHECK(w >= 2);
    CHECK(w <= 3);
  }
  SUBCASE("deterministic for a fixed seed") {
    const auto a = abs_complexity_bound(random_state(4, 2), 300, 42);
    const auto b = abs_complexity_bound(random_state(4, 2), 300, 42);
    CHECK(a.complexity == b.complexity);
    CHECK(a.witness.table() == b.witness.table());
  }
}
