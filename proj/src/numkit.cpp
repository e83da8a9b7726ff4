#include "momap/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/QR>

namespace momap {

namespace {

// Affine minimum-norm combination of the points indexed by s: returns weights
// summing to one that minimize |sum_i a_i p_i|.
RVector affine_min(const std::vector<RVector>& pts, const std::vector<int>& s) {
  const auto k = static_cast<Eigen::Index>(s.size());
  RVector a(k);
  if (k == 1) {
    a(0) = 1.0;
    return a;
  }
  const RVector& p0 = pts[s[0]];
  RMatrix d(p0.size(), k - 1);
  for (Eigen::Index i = 1; i < k; ++i) d.col(i - 1) = pts[s[i]] - p0;
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(d);
  cod.setThreshold(1e-12);
  const RVector t = cod.solve(-p0);
  a(0) = 1.0 - t.sum();
  a.tail(k - 1) = t;
  return a;
}

RVector combine(const std::vector<RVector>& pts, const std::vector<int>& s,
                const RVector& w) {
  RVector x = RVector::Zero(pts[s[0]].size());
  for (std::size_t i = 0; i < s.size(); ++i) x += w(i) * pts[s[i]];
  return x;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<RVector>& points) {
  if (points.empty()) throw std::invalid_argument("min_norm_point: empty input");
  const Eigen::Index dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("min_norm_point: ragged input");

  const int m = static_cast<int>(points.size());
  // Lexicographic rank of each point for deterministic tie-breaking.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::lexicographical_compare(points[a].data(), points[a].data() + dim,
                                        points[b].data(), points[b].data() + dim);
  });
  std::vector<int> rank(m);
  for (int i = 0; i < m; ++i) rank[order[i]] = i;

  double scale = 0;
  for (const auto& p : points) scale = std::max(scale, p.squaredNorm());
  scale = std::max(scale, 1e-300);
  const double tie = 1e-14 * scale;
  const double major_tol = 1e-13 * scale;
  const double pos_tol = 1e-13;

  auto better = [&](double a, int ia, double b, int ib) {
    if (a < b - tie) return true;
    if (a > b + tie) return false;
    return rank[ia] < rank[ib];
  };

  int start = 0;
  for (int i = 1; i < m; ++i)
    if (better(points[i].squaredNorm(), i, points[start].squaredNorm(), start)) start = i;

  std::vector<int> s{start};
  RVector lam = RVector::Ones(1);
  RVector x = points[start];
  int it = 0;
  const int max_iter = 100 + 50 * m;
  for (; it < max_iter; ++it) {
    int j = 0;
    double best = x.dot(points[0]);
    for (int i = 1; i < m; ++i) {
      const double v = x.dot(points[i]);
      if (better(v, i, best, j)) {
        best = v;
        j = i;
      }
    }
    if (best >= x.squaredNorm() - major_tol) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    lam.conservativeResize(lam.size() + 1);
    lam(lam.size() - 1) = 0.0;

    for (int minor = 0; minor <= m + 1; ++minor) {
      const RVector a = affine_min(points, s);
      if ((a.array() > pos_tol).all()) {
        lam = a;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) <= pos_tol && lam(i) - a(i) > 0) theta = std::min(theta, lam(i) / (lam(i) - a(i)));
      lam = theta * a + (1.0 - theta) * lam;
      std::vector<int> s2;
      std::vector<double> l2;
      for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) > pos_tol) {
          s2.push_back(s[i]);
          l2.push_back(lam(i));
        }
      }
      if (s2.empty()) {  // numerical corner: keep the best remaining point
        s2.push_back(s.back());
        l2.push_back(1.0);
      }
      s = std::move(s2);
      lam = Eigen::Map<RVector>(l2.data(), static_cast<Eigen::Index>(l2.size()));
      lam /= lam.sum();
    }
    x = combine(points, s, lam);
  }

  MinNormResult out;
  out.coefficients = RVector::Zero(m);
  for (std::size_t i = 0; i < s.size(); ++i) out.coefficients(s[i]) = lam(i);
  out.beta = x;
  out.active = s;
  std::sort(out.active.begin(), out.active.end());
  out.iterations = it;
  return out;
}

double kkt_gap(const std::vector<RVector>& points, const RVector& beta) {
  double g = std::numeric_limits<double>::infinity();
  for (const auto& p : points) g = std::min(g, (p - beta).dot(beta));
  return g;
}

CVector tangent_project(const CVector& v, const CVector& w) { return w - v.dot(w) * v; }

double real_cosine(const CVector& a, const CVector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) return 0.0;
  return a.dot(b).real() / (na * nb);
}

CVector fd_gradient(const StateFunction& f, const CVector& v, const Tolerances& tol) {
  const Eigen::Index n = v.size();
  const cplx I(0, 1);
  // Real orthonormal frame of the horizontal space {t : Re<v,t> = Re<iv,t> = 0}.
  std::vector<CVector> frame{v, I * v};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const cplx unit : {cplx(1), I}) {
      CVector t = CVector::Zero(n);
      t(j) = unit;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : frame) t -= e.dot(t).real() * e;
      const double nt = t.norm();
      if (nt > 1e-8) frame.push_back(t / nt);
    }
  }
  const double h = tol.fd_step;
  CVector g = CVector::Zero(n);
  for (std::size_t i = 2; i < frame.size(); ++i) {
    const CVector& t = frame[i];
    const CVector plus = (v + h * t).normalized();
    const CVector minus = (v - h * t).normalized();
    g += ((f(plus) - f(minus)) / (2 * h)) * t;
  }
  return g;
}

}  // namespace momap
