#include "momap/critical_atlas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <Eigen/QR>

#include "momap/numkit.hpp"

namespace momap {

std::vector<Weight> qubit_weights(int L) {
  if (L < 1 || L > 6) throw std::invalid_argument("qubit_weights: L must be in [1, 6]");
  std::vector<Weight> out;
  const std::size_t n = std::size_t(1) << L;
  out.reserve(n);
  for (std::size_t b = 0; b < n; ++b) {
    Weight w;
    w.basis_index = b;
    w.coords.resize(L);
    for (int k = 0; k < L; ++k) {
      const bool bit = (b >> (L - 1 - k)) & 1u;
      w.coords(k) = bit ? -0.5 : 0.5;
    }
    out.push_back(std::move(w));
  }
  return out;
}

RVector canonical_beta(const RVector& beta) {
  RVector c = beta.cwiseAbs();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (c(i) < 1e-14) c(i) = 0;
  std::sort(c.data(), c.data() + c.size(), std::greater<>());
  return c;
}

std::vector<RVector> expand_permutations(const RVector& beta) {
  std::vector<double> v(beta.data(), beta.data() + beta.size());
  std::sort(v.begin(), v.end());
  std::vector<RVector> out;
  do {
    out.push_back(Eigen::Map<RVector>(v.data(), static_cast<Eigen::Index>(v.size())));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<Weight> hyperplane_support(const RVector& beta, double tol) {
  std::vector<Weight> out;
  const double b2 = beta.squaredNorm();
  for (auto& w : qubit_weights(static_cast<int>(beta.size())))
    if (std::abs(w.coords.dot(beta) - b2) <= tol) out.push_back(std::move(w));
  return out;
}

MomentumPoint torus_momentum(const RVector& beta) {
  MomentumPoint mu;
  for (Eigen::Index k = 0; k < beta.size(); ++k) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = beta(k);
    m(1, 1) = -beta(k);
    mu.blocks.push_back(m);
  }
  return mu;
}

namespace {

using Key = std::vector<long long>;

Key quantize(const RVector& b, double tol) {
  Key k(static_cast<std::size_t>(b.size()));
  for (Eigen::Index i = 0; i < b.size(); ++i) k[i] = std::llround(b(i) / tol);
  return k;
}

// Walks all index subsets of {0..n-1} with 1 <= size <= max_size whose smallest
// element is `first`, calling visit(subset).
void walk_subsets(int n, int max_size, int first, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& visit) {
  visit(cur);
  if (static_cast<int>(cur.size()) == max_size) return;
  for (int j = cur.back() + 1; j < n; ++j) {
    cur.push_back(j);
    walk_subsets(n, max_size, first, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

Atlas enumerate_B(int L, const AtlasOptions& opts) {
  if (L < 2 || L > 5) throw std::invalid_argument("enumerate_B: L must be in [2, 5]");
  opts.tol.validate();
  const auto weights = qubit_weights(L);
  const int n = static_cast<int>(weights.size());
  const int max_size = std::min(n, opts.max_subset_size > 0 ? opts.max_subset_size : L + 1);
  const double dedupe = opts.tol.dedupe_tol;

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

  std::mutex merge_mutex;
  std::map<Key, RVector> found;
  std::size_t examined = 0;
  bool partial = false;
  const std::size_t per_thread_budget = opts.subset_budget / threads + 1;

  auto worker = [&](unsigned tid) {
    std::map<Key, RVector> local;
    std::size_t count = 0;
    bool cut = false;
    std::vector<int> cur;
    for (int first = static_cast<int>(tid); first < n && !cut; first += static_cast<int>(threads)) {
      cur.assign(1, first);
      walk_subsets(n, max_size, first, cur, [&](const std::vector<int>& s) {
        if (cut) return;
        if (++count > per_thread_budget) {
          cut = true;
          return;
        }
        const RVector& p0 = weights[s[0]].coords;
        RVector beta;
        if (s.size() == 1) {
          beta = p0;
        } else {
          RMatrix d(L, static_cast<Eigen::Index>(s.size()) - 1);
          for (std::size_t i = 1; i < s.size(); ++i) d.col(i - 1) = weights[s[i]].coords - p0;
          Eigen::ColPivHouseholderQR<RMatrix> qr(d);
          qr.setThreshold(1e-10);
          if (qr.rank() != d.cols()) return;  // affinely dependent
          const RVector t = qr.solve(-p0);
          const double a0 = 1.0 - t.sum();
          if (a0 < -1e-12 || (t.array() < -1e-12).any()) return;  // projection not in hull
          beta = p0 + d * t;
        }
        const RVector c = canonical_beta(beta);
        local.emplace(quantize(c, dedupe), c);
      });
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (auto& [k, v] : local) found.emplace(k, v);
    examined += std::min(count, per_thread_budget);
    partial = partial || cut;
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  // Merge neighbours that straddle a quantization boundary.
  std::vector<RVector> betas;
  for (auto& [k, v] : found) {
    bool dup = false;
    for (const auto& b : betas)
      if ((b - v).cwiseAbs().maxCoeff() <= dedupe) dup = true;
    if (!dup) betas.push_back(v);
  }
  // Recompute each value from its support so the digits do not depend on which
  // subset reached it first.
  for (auto& b : betas) {
    std::vector<RVector> pts;
    for (const auto& w : hyperplane_support(b, dedupe)) pts.push_back(w.coords);
    b = canonical_beta(min_norm_point(pts).beta);
  }
  std::sort(betas.begin(), betas.end(), [](const RVector& a, const RVector& b) {
    const double na = a.squaredNorm(), nb = b.squaredNorm();
    if (std::abs(na - nb) > 1e-12) return na < nb;
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });

  Atlas atlas;
  atlas.qubits = L;
  atlas.subsets_examined = examined;
  atlas.partial = partial;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    CriticalValue cv;
    cv.beta = betas[i];
    cv.norm_sq = cv.beta.squaredNorm();
    cv.support = hyperplane_support(cv.beta, dedupe);
    for (const auto& w : cv.support) cv.z_basis.push_back(w.basis_index);
    if (opts.find_witnesses) {
      AtlasOptions wopts = opts;
      wopts.seed = opts.seed + 7919 * i;
      auto res = find_witness(cv, L, wopts);
      cv.witness_residual = res.residual;
      cv.nonempty = res.state.has_value();
      cv.witness = std::move(res.state);
    }
    atlas.values.push_back(std::move(cv));
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// Witness search: Levenberg-Marquardt on the residual mu(v) - beta over unit
// vectors supported on Z_beta.

namespace {

// Real residual vector whose squared norm is sum_k |m_k - B_k|_F^2.
RVector momentum_residual(const std::vector<CMatrix>& m, const std::vector<CMatrix>& target) {
  std::vector<double> r;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const CMatrix d = m[k] - target[k];
    const Eigen::Index n = d.rows();
    for (Eigen::Index a = 0; a < n; ++a) {
      r.push_back(d(a, a).real());
      for (Eigen::Index b = a + 1; b < n; ++b) {
        r.push_back(std::sqrt(2.0) * d(a, b).real());
        r.push_back(std::sqrt(2.0) * d(a, b).imag());
      }
    }
  }
  return Eigen::Map<RVector>(r.data(), static_cast<Eigen::Index>(r.size()));
}

struct LmProblem {
  std::vector<int> dims;
  std::vector<std::size_t> support;
  std::vector<CMatrix> target;

  std::vector<CMatrix> blocks(const CVector& v) const {
    std::vector<CMatrix> m;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
      m.push_back(tensor::slot_reduced(v, dims, k) - CMatrix::Identity(dims[k], dims[k]) / double(dims[k]));
    return m;
  }

  RVector residual(const CVector& v) const { return momentum_residual(blocks(v), target); }

  RMatrix jacobian(const CVector& v) const {
    const auto m = blocks(v);
    std::vector<CMatrix> rho;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
      rho.push_back(m[k] + CMatrix::Identity(dims[k], dims[k]) / double(dims[k]));
    std::vector<CMatrix> zero;
    for (const auto& b : m) zero.push_back(CMatrix::Zero(b.rows(), b.cols()));
    const Eigen::Index cols = 2 * static_cast<Eigen::Index>(support.size());
    RMatrix j;
    for (std::size_t s = 0; s < support.size(); ++s) {
      for (int part = 0; part < 2; ++part) {
        CVector delta = CVector::Zero(v.size());
        delta(static_cast<Eigen::Index>(support[s])) = part ? cplx(0, 1) : cplx(1);
        const double radial = 2 * v.dot(delta).real();
        std::vector<CMatrix> dm;
        for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
          const CMatrix c = tensor::slot_cross(delta, v, dims, k);
          dm.push_back(c + c.adjoint() - radial * rho[k]);
        }
        const RVector col = momentum_residual(dm, zero);
        if (j.size() == 0) j.resize(col.size(), cols);
        j.col(2 * static_cast<Eigen::Index>(s) + part) = col;
      }
    }
    return j;
  }
};

CVector embed_support(const std::vector<std::size_t>& support, const CVector& x, std::size_t n) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < support.size(); ++s) v(static_cast<Eigen::Index>(support[s])) = x(s);
  return v / v.norm();
}

// Returns the final residual norm; v is updated in place.
double levenberg_marquardt(const LmProblem& p, CVector& v, int max_iter) {
  RVector r = p.residual(v);
  double cost = r.squaredNorm();
  double damping = 1e-3;
  for (int it = 0; it < max_iter && std::sqrt(cost) > 1e-14; ++it) {
    const RMatrix j = p.jacobian(v);
    const RMatrix jtj = j.transpose() * j;
    const RVector g = j.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      RMatrix a = jtj;
      a.diagonal().array() += damping * (1.0 + jtj.diagonal().array());
      const RVector step = a.ldlt().solve(-g);
      CVector cand = v;
      for (std::size_t s = 0; s < p.support.size(); ++s)
        cand(static_cast<Eigen::Index>(p.support[s])) +=
            cplx(step(2 * static_cast<Eigen::Index>(s)), step(2 * static_cast<Eigen::Index>(s) + 1));
      cand /= cand.norm();
      const RVector rc = p.residual(cand);
      const double cc = rc.squaredNorm();
      if (cc < cost) {
        v = cand;
        r = rc;
        cost = cc;
        damping = std::max(damping / 3.0, 1e-15);
        improved = true;
        break;
      }
      damping *= 4.0;
    }
    if (!improved) break;
  }
  return std::sqrt(cost);
}

}  // namespace

WitnessResult find_witness(const CriticalValue& value, int L, const AtlasOptions& opts) {
  constexpr double kAccept = 1e-7;
  WitnessResult best;
  best.residual = std::numeric_limits<double>::infinity();
  if (value.z_basis.empty()) return best;

  LmProblem p;
  p.dims.assign(L, 2);
  p.support = value.z_basis;
  p.target = torus_momentum(value.beta).blocks;
  const std::size_t n = std::size_t(1) << L;
  const auto m = static_cast<Eigen::Index>(p.support.size());

  // Convex weights reproducing beta on the torus give the first start.
  std::vector<RVector> pts;
  for (const auto& w : value.support) pts.push_back(w.coords);
  const RVector conv = min_norm_point(pts).coefficients;

  Rng rng(opts.seed);
  std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
  for (int restart = 0; restart < std::max(1, opts.witness_restarts); ++restart) {
    CVector x(m);
    if (restart == 0) {
      for (Eigen::Index i = 0; i < m; ++i) x(i) = std::sqrt(std::max(conv(i), 0.0));
    } else if (restart % 2 == 1) {
      for (Eigen::Index i = 0; i < m; ++i)
        x(i) = std::sqrt(std::max(conv(i), 0.0)) * std::polar(1.0, phase(rng)) +
               0.3 * linalg::complex_normal(rng);
    } else {
      x = linalg::random_complex_vector(static_cast<int>(m), rng);
    }
    if (x.norm() == 0) x(0) = 1;
    CVector v = embed_support(p.support, x, n);
    const double res = levenberg_marquardt(p, v, opts.witness_iterations);
    if (res < best.residual) {
      best.residual = res;
      if (res < kAccept)
        best.state = make_state(SectorSpec::distinguishable(p.dims), v);
    }
    if (best.residual < 1e-12) break;
  }
  if (best.residual >= kAccept) best.state.reset();
  return best;
}

CriticalityReport is_critical(const PureState& state, const Tolerances& tol) {
  const CVector& v = state.amplitudes();
  const CVector av = apply_momentum_operator(momentum(state), state);
  CriticalityReport r;
  r.eigenvalue = v.dot(av).real();
  r.residual = (av - r.eigenvalue * v).norm();
  r.critical = r.residual < tol.flow_tol;
  return r;
}

int match_critical_value(const Atlas& atlas, const RVector& lambda, double tol) {
  const RVector c = canonical_beta(lambda);
  int best = -1;
  double best_d = tol;
  for (std::size_t i = 0; i < atlas.values.size(); ++i) {
    const auto& b = atlas.values[i].beta;
    if (b.size() != c.size()) continue;
    const double d = (b - c).cwiseAbs().maxCoeff();
    if (d <= best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace momap
