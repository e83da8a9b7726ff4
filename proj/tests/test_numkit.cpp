#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "momap/critical_atlas.hpp"
#include "momap/numkit.hpp"
#include "momap/states.hpp"
#include "oracles.hpp"

using namespace momap;

namespace {

RVector vec(std::initializer_list<double> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

void check_certificate(const std::vector<RVector>& pts, const MinNormResult& r) {
  CHECK(r.coefficients.minCoeff() >= 0);
  CHECK(r.coefficients.sum() == doctest::Approx(1.0).epsilon(1e-12));
  RVector recon = RVector::Zero(r.beta.size());
  for (std::size_t i = 0; i < pts.size(); ++i) recon += r.coefficients(static_cast<Eigen::Index>(i)) * pts[i];
  CHECK((recon - r.beta).norm() < 1e-10);
  CHECK(kkt_gap(pts, r.beta) >= -1e-9);
}

}  // namespace

TEST_CASE("min-norm point examples") {
  const std::vector<RVector> pair{vec({0.5, 0.5}), vec({-0.5, -0.5})};
  CHECK(min_norm_point(pair).beta.norm() < 1e-12);

  const std::vector<RVector> tri{vec({-0.5, 0.5, 0.5}), vec({0.5, -0.5, 0.5}), vec({0.5, 0.5, -0.5})};
  const auto r = min_norm_point(tri);
  for (int k = 0; k < 3; ++k) CHECK(r.beta(k) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  check_certificate(tri, r);

  const std::vector<RVector> single{vec({0.5, 0.5})};
  CHECK((min_norm_point(single).beta - vec({0.5, 0.5})).norm() < 1e-15);

  CHECK_THROWS_AS(min_norm_point({}), std::invalid_argument);
  CHECK_THROWS_AS(min_norm_point({vec({1, 2}), vec({1})}), std::invalid_argument);
}

TEST_CASE("min-norm point agrees with the subset-enumeration oracle") {
  Rng rng(31);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 + t % 3;
    const int n = 1 + t % 7;
    std::vector<RVector> pts;
    for (int i = 0; i < n; ++i) {
      RVector p(dim);
      for (int k = 0; k < dim; ++k) p(k) = nd(rng) + (t % 2 ? 1.0 : 0.0);
      pts.push_back(p);
    }
    const auto r = min_norm_point(pts);
    CHECK((r.beta - oracle::min_norm_by_subsets(pts)).norm() < 1e-9);
    check_certificate(pts, r);
  }
}

TEST_CASE("min-norm point on weight sets") {
  const auto weights = qubit_weights(4);
  std::vector<RVector> pts;
  for (const auto& w : weights) pts.push_back(w.coords);
  CHECK(min_norm_point(pts).beta.norm() < 1e-10);  // hull contains the origin

  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    std::vector<RVector> sub;
    for (const auto& p : pts)
      if (rng() % 3 == 0) sub.push_back(p);
    if (sub.empty()) continue;
    const auto r = min_norm_point(sub);
    check_certificate(sub, r);
    CHECK((r.beta - oracle::min_norm_by_subsets(sub)).norm() < 1e-9);
  }
}

TEST_CASE("min-norm point is order independent and ignores interior points") {
  Rng rng(33);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    std::vector<RVector> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(vec({nd(rng) + 1, nd(rng), nd(rng)}));
    const RVector base = min_norm_point(pts).beta;
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK((min_norm_point(shuffled).beta - base).norm() < 1e-10);
    auto extended = pts;
    extended.push_back((pts[0] + pts[1] + pts[2]) / 3.0);
    CHECK((min_norm_point(extended).beta - base).norm() < 1e-10);
  }
}

TEST_CASE("tangent projection") {
  Rng rng(34);
  const CVector v = linalg::random_complex_vector(5, rng).normalized();
  CHECK(tangent_project(v, v).norm() < 1e-12);
  CVector w = linalg::random_complex_vector(5, rng);
  w -= v.dot(w) * v;
  CHECK((tangent_project(v, w) - w).norm() < 1e-12);
  CHECK((tangent_project(v, v * cplx(2, 1) + w) - w).norm() < 1e-12);
  const CVector any = linalg::random_complex_vector(5, rng);
  CHECK(std::abs(v.dot(tangent_project(v, any))) < 1e-12);
}

TEST_CASE("finite-difference gradient") {
  Rng rng(35);
  const CVector v = linalg::random_complex_vector(8, rng).normalized();
  CHECK(fd_gradient([](const CVector&) { return 3.0; }, v).norm() < 1e-12);

  const auto sec = SectorSpec::distinguishable({2, 2, 2, 2});
  const StateFunction f = [&](const CVector& x) { return norm_mu_squared(make_state(sec, x)); };
  for (const auto& row : states::four_qubit_critical_table())
    CHECK(fd_gradient(f, row.state.amplitudes()).norm() < 1e-5);
}

TEST_CASE("tolerances validate") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.flow_tol = 0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}
