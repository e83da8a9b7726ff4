#include <doctest.h>

#include <cmath>
#include <random>

#include "momap/lu_equiv.hpp"
#include "momap/states.hpp"

using namespace momap;

namespace {

PureState with_schmidt(const std::vector<double>& coeffs, int da, int db, Rng& rng) {
  CMatrix m = CMatrix::Zero(da, db);
  for (std::size_t i = 0; i < coeffs.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = coeffs[i];
  m = linalg::random_unitary(da, rng) * m * linalg::random_unitary(db, rng).transpose();
  return make_state(SectorSpec::distinguishable({da, db}), m.reshaped<Eigen::RowMajor>());
}

}  // namespace

TEST_CASE("bipartite examples") {
  const auto same = lu_equivalent_bipartite(states::bell_phi_plus(),
                                            states::qubits({{"01", 1}, {"10", -1}}));
  CHECK(same.verdict == Verdict::equivalent);
  CHECK(same.method == "bipartite");
  const auto diff = lu_equivalent_bipartite(states::bell_phi_plus(), states::basis({2, 2}, {0, 0}));
  CHECK(diff.verdict == Verdict::not_equivalent);
  CHECK(diff.max_spectral_gap == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(lu_equivalent_bipartite(states::ghz(3), states::ghz(3)), std::invalid_argument);
}

TEST_CASE("bipartite test is sound on random pairs") {
  Rng rng(61);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int da = 2 + t % 3, db = 2 + (t / 3) % 3;
    const int r = std::min(da, db);
    std::vector<double> c(r);
    for (auto& x : c) x = u(rng);
    const PureState a = with_schmidt(c, da, db, rng);
    const PureState b = with_schmidt(c, da, db, rng);
    CHECK(lu_decide(a, b).verdict == Verdict::equivalent);
    CHECK(lu_decide(b, a).verdict == Verdict::equivalent);
    auto c2 = c;
    c2[0] *= 1.2;
    CHECK(lu_decide(a, with_schmidt(c2, da, db, rng)).verdict == Verdict::not_equivalent);
  }
}

TEST_CASE("two indistinguishable particles") {
  Rng rng(62);
  for (auto sec : {SectorSpec::bosonic(4, 2), SectorSpec::fermionic(4, 2)}) {
    for (int t = 0; t < 20; ++t) {
      const PureState a = random_state(sec, rng);
      const PureState b = apply_local(random_local_unitary(sec, rng), a);
      const auto v = lu_decide(a, b);
      CHECK(v.method == "two_indistinguishable");
      CHECK(v.verdict == Verdict::equivalent);
      CHECK(lu_decide(a, random_state(sec, rng)).verdict == Verdict::not_equivalent);
    }
  }
}

TEST_CASE("necessary test never certifies equivalence") {
  Rng rng(63);
  const auto sec = SectorSpec::distinguishable({2, 2, 2});
  for (int t = 0; t < 20; ++t) {
    const PureState a = random_state(sec, rng);
    const PureState b = apply_local(random_local_unitary(sec, rng), a);
    const auto v = lu_decide(a, b);
    CHECK(v.method == "necessary");
    CHECK(v.verdict == Verdict::undecided_necessary_passed);
    CHECK(lu_decide(a, random_state(sec, rng)).verdict == Verdict::not_equivalent);
  }
  const auto four = lu_decide(states::ghz(4), states::ghz(4));
  CHECK(four.verdict == Verdict::undecided_necessary_passed);
}

TEST_CASE("verdicts are invariant under phases and argument order") {
  const PureState a = states::lu_counterexample_x1();
  const PureState b = states::w_single_excitation(3);
  const PureState phased = make_state(a.sector(), a.amplitudes() * std::polar(1.0, 0.7));
  CHECK(lu_decide(a, b).verdict == lu_decide(b, a).verdict);
  CHECK(lu_decide(a, phased).verdict == Verdict::undecided_necessary_passed);
}

TEST_CASE("counterexample pair") {
  const auto r = lu_counterexample_report();
  CHECK_FALSE(r.printed_matches_x1);
  CHECK(r.w_variant_matches_x1);
  CHECK(r.tangle_x1 == doctest::Approx(8.0 / 9));
  CHECK(r.tangle_w_variant < 1e-12);
  CHECK(r.verdict.verdict == Verdict::not_equivalent);
  REQUIRE(r.verdict.tangle_a);
  for (const auto& s : r.spectra_x1) {
    CHECK(s(0) == doctest::Approx(2.0 / 3));
    CHECK(s(1) == doctest::Approx(1.0 / 3));
  }
}
