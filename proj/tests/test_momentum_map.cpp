#include <doctest.h>

#include <cmath>

#include "momap/momentum_map.hpp"
#include "momap/states.hpp"
#include "oracles.hpp"

using namespace momap;

namespace {

CMatrix pauli(int which) {
  CMatrix m(2, 2);
  if (which == 0) m << 0, 1, 1, 0;
  if (which == 1) m << 0, cplx(0, -1), cplx(0, 1), 0;
  if (which == 2) m << 1, 0, 0, -1;
  return m;
}

RVector vec(std::initializer_list<double> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("momentum blocks of named states") {
  for (const auto& b : momentum(states::ghz(4)).blocks) CHECK(b.norm() < 1e-14);
  const PureState sep = states::basis({2, 2, 2, 2}, {1, 1, 1, 1});
  for (const auto& b : momentum(sep).blocks) {
    CHECK(std::abs(b(0, 0) + 0.5) < 1e-14);
    CHECK(std::abs(b(1, 1) - 0.5) < 1e-14);
  }
  const auto table = states::four_qubit_critical_table();
  const auto& phi3 = table[5];
  REQUIRE(phi3.name == "Phi3");
  const SpectraPoint p = psi(phi3.state);
  CHECK(p.lambdas[0](0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p.lambdas[1](0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p.lambdas[2](0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p.lambdas[3](0) == doctest::Approx(0.2).epsilon(1e-12));
  for (const auto& b : momentum(phi3.state).blocks) CHECK(std::abs(b.trace()) < 1e-12);
}

TEST_CASE("norm of the momentum map") {
  CHECK(norm_mu_squared(states::ghz(4)) < 1e-28);
  CHECK(norm_mu_squared(states::ghz(5)) < 1e-28);
  CHECK(norm_mu_squared(states::basis({2, 2, 2, 2}, {0, 0, 0, 0})) == doctest::Approx(0.5));
  CHECK(norm_mu_squared(states::w(4)) == doctest::Approx(0.125));
}

TEST_CASE("mean linear entropy") {
  CHECK(mean_linear_entropy(states::ghz(4)) == doctest::Approx(0.5).epsilon(1e-12));
  const PureState trisep = states::qubits({{"1100", 1.0}, {"1111", 1.0}});
  CHECK(mean_linear_entropy(trisep) == doctest::Approx(0.25).epsilon(1e-12));
  const auto table = states::four_qubit_critical_table();
  CHECK(mean_linear_entropy(table[7].state) == doctest::Approx(27.0 / 56).epsilon(1e-12));
}

TEST_CASE("psi of named states") {
  CHECK(psi(states::ghz(3)).qubit_lambdas().norm() < 1e-14);
  const RVector w = psi(states::w(3)).qubit_lambdas();
  for (int k = 0; k < 3; ++k) CHECK(w(k) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  const PureState zb = states::qubits({{"000", 1.0}, {"011", 1.0}});
  const RVector l = psi(zb).qubit_lambdas();
  CHECK(l(0) == doctest::Approx(0.5));
  CHECK(std::abs(l(1)) < 1e-14);
  CHECK(std::abs(l(2)) < 1e-14);
}

TEST_CASE("Kirwan polytope membership") {
  CHECK(kirwan_contains(vec({0.25, 0.25, 0.25})) == PolytopeMembership::inside);
  CHECK(kirwan_contains(vec({0.5, 0.5, 0.0})) == PolytopeMembership::outside);
  CHECK(kirwan_contains(vec({0.5, 0.0, 0.0})) == PolytopeMembership::boundary);
  CHECK(kirwan_contains(vec({0.6, 0.5, 0.5})) == PolytopeMembership::outside);
  CHECK(kirwan_contains(vec({-0.1, 0.2, 0.2})) == PolytopeMembership::outside);
}

TEST_CASE("reduced space dimensions") {
  const auto interior = reduced_space_dim(vec({0.2, 0.15, 0.1, 0.05}));
  CHECK(interior.kind == ReducedCase::interior);
  CHECK(interior.dim == 14);
  const auto one_half = reduced_space_dim(vec({0.5, 0.2, 0.15, 0.1}));
  CHECK(one_half.kind == ReducedCase::boundary_i);
  CHECK(one_half.k == 1);
  CHECK(one_half.dim == 2);
  const auto zero = reduced_space_dim(vec({0.2, 0.15, 0.1, 0.0}));
  CHECK(zero.kind == ReducedCase::boundary_iii);
  CHECK(zero.dim == 12);
  // 1/2 - 0.3 = (1/2 - 0.4) + (1/2 - 0.45) + (1/2 - 0.45): polygon equality.
  const auto poly = reduced_space_dim(vec({0.3, 0.4, 0.45, 0.45}));
  CHECK(poly.kind == ReducedCase::boundary_ii);
  CHECK(poly.dim == 0);
  CHECK_THROWS_AS(reduced_space_dim(vec({0.5, 0.5, 0.0})), std::domain_error);

  for (int L = 3; L <= 5; ++L) {
    CHECK(reduced_space_formula(ReducedCase::interior, L, 0) == (1L << (L + 1)) - 4 * L - 2);
    for (int k = 1; k <= 2; ++k) {
      CHECK(reduced_space_formula(ReducedCase::boundary_i, L, k) ==
            (1L << (L - k + 1)) - 4 * (L - k) - 2);
      CHECK(reduced_space_formula(ReducedCase::boundary_iii, L, k) ==
            (1L << (L + 1)) - 4 * L - 2 * k - 2);
    }
    CHECK(reduced_space_formula(ReducedCase::boundary_ii, L, 0) == 0);
  }
}

TEST_CASE("KKS form") {
  const PureState zero = states::basis({2}, {0});
  const LocalAlgebraElement x{{cplx(0, 0.5) * pauli(0)}};
  const LocalAlgebraElement y{{cplx(0, 0.5) * pauli(1)}};
  CHECK(std::abs(kks_form_pure(zero, x, x)) < 1e-15);
  // Direct arithmetic: [i sx/2, i sy/2] = -(i/2) sz, so -i <0|.|0> / 2 = -1/4.
  const CMatrix c = x.factors[0] * y.factors[0] - y.factors[0] * x.factors[0];
  const double direct = (cplx(0, -1) * c(0, 0) / 2.0).real();
  CHECK(direct == doctest::Approx(-0.25));
  CHECK(kks_form_pure(zero, x, y) == doctest::Approx(direct));

  Rng rng(21);
  const PureState s = random_state(SectorSpec::distinguishable({2, 3}), rng);
  const LocalAlgebraElement a{{cplx(0, 1) * linalg::random_traceless_hermitian(2, rng),
                               cplx(0, 1) * linalg::random_traceless_hermitian(3, rng)}};
  const LocalAlgebraElement b{{cplx(0, 1) * linalg::random_traceless_hermitian(2, rng),
                               cplx(0, 1) * linalg::random_traceless_hermitian(3, rng)}};
  CHECK(kks_form_pure(s, a, b) == doctest::Approx(-kks_form_pure(s, b, a)));
  CHECK_THROWS_AS(kks_form_pure(zero, LocalAlgebraElement{{pauli(0)}}, y), std::invalid_argument);
}

TEST_CASE("variance plus momentum norm is constant") {
  Rng rng(22);
  for (const auto& dims : {std::vector<int>{2, 2, 2}, std::vector<int>{2, 3}, std::vector<int>{3, 3, 2}}) {
    double expected = 0;
    for (int n : dims) expected += n - 1.0 / n;
    for (int t = 0; t < 100; ++t) {
      const PureState s = random_state(SectorSpec::distinguishable(dims), rng);
      CHECK(oracle::total_variance(s) + 4 * norm_mu_squared(s) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("linear entropy identity for qubits") {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const int L = 2 + t % 4;
    const PureState s = random_state(SectorSpec::distinguishable(std::vector<int>(L, 2)), rng);
    CHECK(std::abs(mean_linear_entropy(s) - (0.5 - 4.0 / L * norm_mu_squared(s))) < 1e-12);
  }
  for (const auto& row : states::four_qubit_critical_table())
    CHECK(std::abs(mean_linear_entropy(row.state) - (0.5 - norm_mu_squared(row.state))) < 1e-12);
}

TEST_CASE("psi is LU invariant and lands in the polytope") {
  Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const auto sec = SectorSpec::distinguishable({2, 2, 2, 2});
    const PureState s = random_state(sec, rng);
    const PureState u = apply_local(random_local_unitary(sec, rng), s);
    const RVector a = psi(s).qubit_lambdas(), b = psi(u).qubit_lambdas();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(kirwan_contains(a) != PolytopeMembership::outside);
  }
}

TEST_CASE("identical particles carry one block") {
  Rng rng(25);
  const PureState b = random_state(SectorSpec::bosonic(3, 3), rng);
  const MomentumPoint mu = momentum(b);
  REQUIRE(mu.blocks.size() == 1);
  CHECK(std::abs(mu.blocks[0].trace()) < 1e-12);
  CHECK(psi(b).lambdas.size() == 1);
}
