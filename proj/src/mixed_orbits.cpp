#include "momap/mixed_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace momap {

GroupSpec GroupSpec::first_only(int parties) {
  GroupSpec g{std::vector<bool>(parties, false)};
  if (parties > 0) g.full[0] = true;
  return g;
}

void GroupSpec::validate(const std::vector<int>& dims) const {
  if (full.size() != dims.size())
    throw std::invalid_argument("GroupSpec: " + std::to_string(full.size()) +
                                " factors for " + std::to_string(dims.size()) + " parties");
  if (std::none_of(full.begin(), full.end(), [](bool b) { return b; }))
    throw std::invalid_argument("GroupSpec: at least one factor must be full");
}

int GroupSpec::dim(const std::vector<int>& dims) const {
  validate(dims);
  int d = 0;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (full[k]) d += dims[k] * dims[k] - 1;
  return d;
}

namespace {

constexpr double kAbsFloor = 1e-12;

struct AlgebraBasis {
  std::vector<CMatrix> xi;     // anti-Hermitian, full size
  std::vector<int> factor;     // party of each element
  std::vector<CMatrix> local;  // Hermitian traceless generator on that party
};

AlgebraBasis algebra_basis(const std::vector<int>& dims, const GroupSpec& K) {
  K.validate(dims);
  AlgebraBasis b;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (!K.full[k]) continue;
    for (const auto& t : linalg::traceless_hermitian_basis(dims[k])) {
      b.xi.push_back(cplx(0, 1) * tensor::embed_slot(t, dims, k));
      b.factor.push_back(k);
      b.local.push_back(t);
    }
  }
  return b;
}

RVector realify(const CMatrix& m) {
  RVector v(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    v(2 * i) = m.data()[i].real();
    v(2 * i + 1) = m.data()[i].imag();
  }
  return v;
}

RMatrix commutator_map(const std::vector<CMatrix>& basis, const CMatrix& target) {
  RMatrix m(2 * target.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    m.col(static_cast<Eigen::Index>(a)) = realify(basis[a] * target - target * basis[a]);
  return m;
}

int adjoint_orbit_dim(const CMatrix& block, double tol) {
  const RVector ev = linalg::hermitian_eigenvalues_desc(block);
  int centralizer = 0;
  for (int m : linalg::multiplicities(ev, tol)) centralizer += m * m;
  return static_cast<int>(block.rows() * block.rows()) - centralizer;
}

// A_m of rho = sum_m A_m (x) Y_m with Y_m orthonormal Hermitian on the second party.
std::vector<CMatrix> first_party_family(const CMatrix& rho, int na, int nb) {
  std::vector<CMatrix> out;
  for (const auto& y : linalg::hermitian_basis(nb)) {
    CMatrix a = CMatrix::Zero(na, na);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j)
        for (int p = 0; p < nb; ++p)
          for (int q = 0; q < nb; ++q) a(i, j) += rho(i * nb + p, j * nb + q) * y(q, p);
    out.push_back(a);
  }
  return out;
}

bool family_commutes(const std::vector<CMatrix>& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      if ((fam[i] * fam[j] - fam[j] * fam[i]).norm() >= kCommuteTol) return false;
  return true;
}

CMatrix swap_parties(const CMatrix& rho, int na, int nb) {
  CMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < na; ++i)
    for (int p = 0; p < nb; ++p)
      for (int j = 0; j < na; ++j)
        for (int q = 0; q < nb; ++q) out(p * na + i, q * na + j) = rho(i * nb + p, j * nb + q);
  return out;
}

void require_bipartite(const DensityMatrix& rho, const char* who) {
  if (rho.num_subsystems() != 2)
    throw std::invalid_argument(std::string(who) + ": requires a bipartite density matrix");
}

}  // namespace

int stabilizer_dim(const DensityMatrix& rho, const GroupSpec& K) {
  const auto basis = algebra_basis(rho.dims(), K);
  const RMatrix m = commutator_map(basis.xi, rho.matrix());
  return static_cast<int>(basis.xi.size()) - linalg::numerical_rank(m, kOrbitRankTol, kAbsFloor);
}

int orbit_dim(const DensityMatrix& rho, const GroupSpec& K) {
  return K.dim(rho.dims()) - stabilizer_dim(rho, K);
}

int omega_rank(const DensityMatrix& rho, const GroupSpec& K) {
  const auto basis = algebra_basis(rho.dims(), K);
  const auto n = static_cast<Eigen::Index>(basis.xi.size());
  RMatrix omega = RMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const CMatrix c = basis.xi[a] * basis.xi[b] - basis.xi[b] * basis.xi[a];
      const double w = (cplx(0, -0.5) * (rho.matrix() * c).trace()).real();
      omega(a, b) = w;
      omega(b, a) = -w;
    }
  return linalg::numerical_rank(omega, kOrbitRankTol, kAbsFloor);
}

int degeneracy_D(const DensityMatrix& rho, const GroupSpec& K) {
  const auto& dims = rho.dims();
  K.validate(dims);
  int adjoint = 0;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (K.full[k]) adjoint += adjoint_orbit_dim(tensor::slot_reduced(rho.matrix(), dims, k), 1e-9);
  return orbit_dim(rho, K) - adjoint;
}

int euler_characteristic(const DensityMatrix& rho, const GroupSpec& K, std::uint64_t seed) {
  const auto& dims = rho.dims();
  const auto basis = algebra_basis(dims, K);
  const RMatrix kernel =
      linalg::kernel_basis(commutator_map(basis.xi, rho.matrix()), kOrbitRankTol, kAbsFloor);
  int torus_rank = 0;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (K.full[k]) torus_rank += dims[k] - 1;
  if (kernel.cols() < torus_rank) return 0;

  // Rank of the stabilizer algebra: centralizer dimension of a generic element.
  Rng rng(seed);
  std::normal_distribution<double> nd;
  RVector coeff(kernel.cols());
  for (Eigen::Index j = 0; j < coeff.size(); ++j) coeff(j) = nd(rng);
  const RVector x = kernel * coeff;
  CMatrix xfull = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t a = 0; a < basis.xi.size(); ++a) xfull += x(static_cast<Eigen::Index>(a)) * basis.xi[a];
  std::vector<CMatrix> kernel_elems;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    CMatrix e = CMatrix::Zero(xfull.rows(), xfull.cols());
    for (std::size_t a = 0; a < basis.xi.size(); ++a) e += kernel(static_cast<Eigen::Index>(a), j) * basis.xi[a];
    kernel_elems.push_back(e);
  }
  const int rank = static_cast<int>(kernel_elems.size()) -
                   linalg::numerical_rank(commutator_map(kernel_elems, xfull), kOrbitRankTol, kAbsFloor);
  if (rank != torus_rank) return 0;

  // The generic element is regular; its per-party eigenbases diagonalize rho
  // on the full factors. Count distinct images under per-party permutations.
  CMatrix u = CMatrix::Identity(1, 1);
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    CMatrix uk = CMatrix::Identity(dims[k], dims[k]);
    if (K.full[k]) {
      CMatrix h = CMatrix::Zero(dims[k], dims[k]);
      for (std::size_t a = 0; a < basis.xi.size(); ++a)
        if (basis.factor[a] == k) h += x(static_cast<Eigen::Index>(a)) * basis.local[a];
      uk = Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvectors();
    }
    CMatrix next = CMatrix::Zero(u.rows() * uk.rows(), u.cols() * uk.cols());
    for (Eigen::Index i = 0; i < u.rows(); ++i)
      for (Eigen::Index j = 0; j < u.cols(); ++j)
        next.block(i * uk.rows(), j * uk.cols(), uk.rows(), uk.cols()) = u(i, j) * uk;
    u = next;
  }
  const CMatrix rho_t = u.adjoint() * rho.matrix() * u;

  std::vector<std::vector<int>> perms(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    perms[k].resize(dims[k]);
    std::iota(perms[k].begin(), perms[k].end(), 0);
  }
  const auto total = static_cast<std::size_t>(rho_t.rows());
  std::vector<CMatrix> images;
  while (true) {
    std::vector<std::size_t> map(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx, stride = total, out = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        stride /= dims[k];
        const std::size_t digit = rem / stride;
        rem %= stride;
        out += static_cast<std::size_t>(perms[k][digit]) * stride;
      }
      map[idx] = out;
    }
    CMatrix img(rho_t.rows(), rho_t.cols());
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j) img(map[i], map[j]) = rho_t(i, j);
    const bool seen = std::any_of(images.begin(), images.end(), [&](const CMatrix& m) {
      return (m - img).cwiseAbs().maxCoeff() < 1e-8;
    });
    if (!seen) images.push_back(img);
    // Next permutation tuple over the full factors.
    std::size_t k = 0;
    for (; k < dims.size(); ++k) {
      if (!K.full[k]) continue;
      if (std::next_permutation(perms[k].begin(), perms[k].end())) break;
    }
    if (k == dims.size()) break;
  }
  return static_cast<int>(images.size());
}

bool is_cq(const DensityMatrix& rho) {
  require_bipartite(rho, "is_cq");
  return family_commutes(first_party_family(rho.matrix(), rho.dims()[0], rho.dims()[1]));
}

bool is_cc(const DensityMatrix& rho) {
  require_bipartite(rho, "is_cc");
  const int na = rho.dims()[0], nb = rho.dims()[1];
  return family_commutes(first_party_family(rho.matrix(), na, nb)) &&
         family_commutes(first_party_family(swap_parties(rho.matrix(), na, nb), nb, na));
}

OrbitReport analyze_orbit(const DensityMatrix& rho, const GroupSpec& K, std::uint64_t seed) {
  OrbitReport r;
  r.dim_K = K.dim(rho.dims());
  r.stabilizer_dim = stabilizer_dim(rho, K);
  r.orbit_dim = r.dim_K - r.stabilizer_dim;
  r.omega_rank = omega_rank(rho, K);
  r.degeneracy_D = degeneracy_D(rho, K);
  r.euler_chi = euler_characteristic(rho, K, seed);
  r.is_symplectic = r.omega_rank == r.orbit_dim;
  if (rho.num_subsystems() == 2) {
    r.is_cq = is_cq(rho);
    r.is_cc = is_cc(rho);
  }
  return r;
}

DensityMatrix cc_density(const std::array<double, 4>& p) {
  CMatrix m = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = p[i];
  return DensityMatrix::make({2, 2}, m);
}

std::vector<SimplexScanRow> cc_simplex_scan(int grid, unsigned threads) {
  if (grid < 1) throw std::invalid_argument("cc_simplex_scan: grid must be >= 1");
  std::vector<SimplexScanRow> rows;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; i + j <= grid; ++j)
      for (int k = 0; i + j + k <= grid; ++k) {
        SimplexScanRow r;
        r.counts = {i, j, k, grid - i - j - k};
        rows.push_back(r);
      }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const GroupSpec K = GroupSpec::full_product(2);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      auto& r = rows[n];
      std::array<double, 4> p;
      for (int t = 0; t < 4; ++t) p[t] = double(r.counts[t]) / grid;
      const DensityMatrix rho = cc_density(p);
      r.orbit_dim = orbit_dim(rho, K);
      r.omega_rank = omega_rank(rho, K);
      r.degeneracy_D = degeneracy_D(rho, K);
      r.euler_chi = euler_characteristic(rho, K);
    }
  };
  const std::size_t chunk = (rows.size() + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (std::size_t b = 0; b < rows.size(); b += chunk)
    pool.emplace_back(work, b, std::min(rows.size(), b + chunk));
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace momap
