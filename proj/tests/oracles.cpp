#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

CMatrix partial_trace(const CVector& v, const std::vector<int>& dims, int k) {
  const int L = static_cast<int>(dims.size());
  std::size_t total = 1;
  for (int d : dims) total *= d;
  CMatrix r = CMatrix::Zero(dims[k], dims[k]);
  auto digits = [&](std::size_t idx) {
    std::vector<int> dg(L);
    for (int j = L - 1; j >= 0; --j) {
      dg[j] = static_cast<int>(idx % dims[j]);
      idx /= dims[j];
    }
    return dg;
  };
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      const auto da = digits(a), db = digits(b);
      bool same = true;
      for (int j = 0; j < L; ++j)
        if (j != k && da[j] != db[j]) same = false;
      if (same) r(da[k], db[k]) += v(a) * std::conj(v(b));
    }
  return r;
}

RVector min_norm_by_subsets(const std::vector<RVector>& points) {
  const int n = static_cast<int>(points.size());
  const int dim = static_cast<int>(points[0].size());
  RVector best;
  double best_norm = 1e300;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int m = static_cast<int>(idx.size());
    // min |sum c_i p_i|^2 subject to sum c_i = 1: [G 1; 1^T 0][c; nu] = [0; 1].
    momap::RMatrix kkt = momap::RMatrix::Zero(m + 1, m + 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) kkt(i, j) = points[idx[i]].dot(points[idx[j]]);
      kkt(i, m) = kkt(m, i) = 1;
    }
    RVector rhs = RVector::Zero(m + 1);
    rhs(m) = 1;
    const RVector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    RVector c = sol.head(m);
    if ((kkt * sol - rhs).norm() > 1e-9) continue;
    if ((c.array() < -1e-12).any()) continue;
    RVector x = RVector::Zero(dim);
    for (int i = 0; i < m; ++i) x += c(i) * points[idx[i]];
    const double nx = x.squaredNorm();
    if (nx < best_norm - 1e-15) {
      best_norm = nx;
      best = x;
    }
  }
  return best;
}

namespace {

RVector canonical(RVector b) {
  b = b.cwiseAbs();
  std::sort(b.data(), b.data() + b.size(), std::greater<>());
  return b;
}

}  // namespace

std::vector<RVector> brute_force_B(int L, int max_size) {
  const int n = 1 << L;
  std::vector<RVector> w;
  for (int b = 0; b < n; ++b) {
    RVector c(L);
    for (int k = 0; k < L; ++k) c(k) = ((b >> (L - 1 - k)) & 1) ? -0.5 : 0.5;
    w.push_back(c);
  }
  std::vector<RVector> out;
  const unsigned long long limit = 1ull << n;
  for (unsigned long long mask = 1; mask < limit; ++mask) {
    if (__builtin_popcountll(mask) > max_size) continue;
    std::vector<RVector> pts;
    for (int i = 0; i < n; ++i)
      if (mask & (1ull << i)) pts.push_back(w[i]);
    const RVector c = canonical(min_norm_by_subsets(pts));
    const bool seen = std::any_of(out.begin(), out.end(), [&](const RVector& o) {
      return (o - c).cwiseAbs().maxCoeff() < 1e-9;
    });
    if (!seen) out.push_back(c);
  }
  return out;
}

double concurrence(const CMatrix& rho) {
  CMatrix sy(2, 2);
  sy << 0, momap::cplx(0, -1), momap::cplx(0, 1), 0;
  CMatrix yy(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) yy.block(2 * i, 2 * j, 2, 2) = sy(i, j) * sy;
  const CMatrix tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMatrix> es(rho * tilde);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double tangle_ckw(const momap::PureState& s) {
  const CVector& v = s.amplitudes();
  const CMatrix full = v * v.adjoint();
  // rho_AB: trace out C; rho_AC: trace out B.
  CMatrix ab = CMatrix::Zero(4, 4), ac = CMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2) {
              const auto x = full(4 * a + 2 * b + c, 4 * a2 + 2 * b2 + c2);
              if (c == c2) ab(2 * a + b, 2 * a2 + b2) += x;
              if (b == b2) ac(2 * a + c, 2 * a2 + c2) += x;
            }
  const CMatrix ra = partial_trace(v, {2, 2, 2}, 0);
  const double det = (ra(0, 0) * ra(1, 1) - ra(0, 1) * ra(1, 0)).real();
  const double cab = concurrence(ab), cac = concurrence(ac);
  return 4 * det - cab * cab - cac * cac;
}

namespace {

std::vector<CMatrix> family(const CMatrix& rho, int na, int nb, bool first, momap::Rng& rng) {
  // Tr_other(rho (1 (x) Y)) for random Hermitian Y on the other party.
  std::vector<CMatrix> out;
  const int other = first ? nb : na;
  const int self = first ? na : nb;
  for (int t = 0; t < other * other + 2; ++t) {
    const CMatrix g = momap::linalg::random_complex_matrix(other, rng);
    const CMatrix y = (g + g.adjoint()) / 2.0;
    CMatrix a = CMatrix::Zero(self, self);
    for (int i = 0; i < self; ++i)
      for (int j = 0; j < self; ++j)
        for (int p = 0; p < other; ++p)
          for (int q = 0; q < other; ++q) {
            const int r = first ? i * nb + p : p * nb + i;
            const int c = first ? j * nb + q : q * nb + j;
            a(i, j) += rho(r, c) * y(q, p);
          }
    out.push_back(a);
  }
  return out;
}

CMatrix generic_eigenbasis(const std::vector<CMatrix>& fam, momap::Rng& rng) {
  std::normal_distribution<double> nd;
  CMatrix h = CMatrix::Zero(fam[0].rows(), fam[0].cols());
  for (const auto& a : fam) h += nd(rng) * a;
  h = (h + h.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvectors();
}

}  // namespace

bool is_cc_by_diagonalization(const CMatrix& rho, int na, int nb, momap::Rng& rng) {
  const CMatrix ua = generic_eigenbasis(family(rho, na, nb, true, rng), rng);
  const CMatrix ub = generic_eigenbasis(family(rho, na, nb, false, rng), rng);
  CMatrix u(na * nb, na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) u.block(i * nb, j * nb, nb, nb) = ua(i, j) * ub;
  CMatrix d = u.adjoint() * rho * u;
  d.diagonal().setZero();
  return d.cwiseAbs().maxCoeff() < 1e-7;
}

double total_variance(const momap::PureState& s) {
  const auto& dims = s.sector().slot_dims();
  const CVector& v = s.amplitudes();
  double var = 0;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    for (const auto& x : momap::linalg::traceless_hermitian_basis(dims[k])) {
      const CMatrix big = momap::tensor::embed_slot(x, dims, k);
      const CVector xv = big * v;
      const double mean = v.dot(xv).real();
      var += xv.squaredNorm() - mean * mean;
    }
  return var;
}

bool sets_equal(const std::vector<RVector>& a, const std::vector<RVector>& b, double tol) {
  auto contains = [&](const std::vector<RVector>& s, const RVector& x) {
    return std::any_of(s.begin(), s.end(), [&](const RVector& y) {
      return y.size() == x.size() && (y - x).cwiseAbs().maxCoeff() <= tol;
    });
  };
  for (const auto& x : a)
    if (!contains(b, x)) return false;
  for (const auto& x : b)
    if (!contains(a, x)) return false;
  return true;
}

}  // namespace oracle
