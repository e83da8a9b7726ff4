#include "momap/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace momap::linalg {

RVector hermitian_eigenvalues_desc(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  RVector ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

CMatrix expm_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector e = es.eigenvalues().array().exp();
  return es.eigenvectors() * e.cast<cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

namespace {

RVector singular_values(const RMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::BDCSVD<RMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace

int numerical_rank(const RMatrix& m, double rel_tol, double abs_floor) {
  const RVector s = singular_values(m);
  if (s.size() == 0) return 0;
  const double cut = std::max(rel_tol * s(0), abs_floor);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

RMatrix kernel_basis(const RMatrix& m, double rel_tol, double abs_floor) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return RMatrix::Identity(n, n);
  Eigen::BDCSVD<RMatrix> svd(m, Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  const double cut = s.size() ? std::max(rel_tol * s(0), abs_floor) : abs_floor;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

std::vector<CMatrix> hermitian_basis(int n) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  out.push_back(CMatrix::Identity(n, n) / std::sqrt(double(n)));
  const double r2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMatrix s = CMatrix::Zero(n, n);
      s(j, k) = s(k, j) = r2;
      out.push_back(s);
      CMatrix a = CMatrix::Zero(n, n);
      a(j, k) = cplx(0, -r2);
      a(k, j) = cplx(0, r2);
      out.push_back(a);
    }
  }
  for (int l = 1; l < n; ++l) {
    CMatrix d = CMatrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int j = 0; j < l; ++j) d(j, j) = c;
    d(l, l) = -l * c;
    out.push_back(d);
  }
  return out;
}

std::vector<CMatrix> traceless_hermitian_basis(int n) {
  auto all = hermitian_basis(n);
  all.erase(all.begin());
  return all;
}

std::vector<int> multiplicities(const RVector& v, double tol) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0 && std::abs(v(i) - v(i - 1)) <= tol)
      ++out.back();
    else
      out.push_back(1);
  }
  return out;
}

cplx complex_normal(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

CVector random_complex_vector(int n, Rng& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_normal(rng);
  return v;
}

CMatrix random_complex_matrix(int n, Rng& rng) {
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = complex_normal(rng);
  return m;
}

CMatrix random_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex_matrix(n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix random_traceless_hermitian(int n, Rng& rng) {
  const CMatrix a = random_complex_matrix(n, rng);
  CMatrix h = (a + a.adjoint()) / 2.0;
  h -= (h.trace() / double(n)) * CMatrix::Identity(n, n);
  return h;
}

}  // namespace momap::linalg
