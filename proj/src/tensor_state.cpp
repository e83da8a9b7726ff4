#include "momap/tensor_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace momap {

std::string to_string(ParticleKind kind) {
  switch (kind) {
    case ParticleKind::distinguishable: return "distinguishable";
    case ParticleKind::bosonic: return "bosonic";
    case ParticleKind::fermionic: return "fermionic";
  }
  return "unknown";
}

ParticleKind particle_kind_from_string(const std::string& s) {
  if (s == "distinguishable") return ParticleKind::distinguishable;
  if (s == "bosonic") return ParticleKind::bosonic;
  if (s == "fermionic") return ParticleKind::fermionic;
  throw std::invalid_argument("unknown particle kind '" + s + "'");
}

SectorSpec::SectorSpec(ParticleKind kind, std::vector<int> dims)
    : kind_(kind), dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("SectorSpec: no subsystems");
  for (int d : dims_)
    if (d < 2) throw std::invalid_argument("SectorSpec: local dimension must be >= 2");
  if (kind_ != ParticleKind::distinguishable) {
    if (!std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_[0]; }))
      throw std::invalid_argument("SectorSpec: identical particles need a common d");
    if (kind_ == ParticleKind::fermionic && num_slots() > dims_[0])
      throw std::invalid_argument("SectorSpec: fermionic sector requires L <= d");
  }
  double total = 1;
  for (int d : dims_) total *= d;
  if (total > 1 << 24) throw std::invalid_argument("SectorSpec: tensor too large");
}

SectorSpec SectorSpec::distinguishable(std::vector<int> dims) {
  return SectorSpec(ParticleKind::distinguishable, std::move(dims));
}

SectorSpec SectorSpec::bosonic(int d, int particles) {
  if (particles < 1) throw std::invalid_argument("SectorSpec: particle count must be >= 1");
  return SectorSpec(ParticleKind::bosonic, std::vector<int>(particles, d));
}

SectorSpec SectorSpec::fermionic(int d, int particles) {
  if (particles < 1) throw std::invalid_argument("SectorSpec: particle count must be >= 1");
  return SectorSpec(ParticleKind::fermionic, std::vector<int>(particles, d));
}

int SectorSpec::subsystem_dim(int k) const {
  if (k < 0 || k >= num_subsystems())
    throw std::out_of_range("subsystem index " + std::to_string(k) + " out of range");
  return dims_[static_cast<std::size_t>(k)];
}

std::size_t SectorSpec::tensor_dim() const {
  std::size_t n = 1;
  for (int d : dims_) n *= static_cast<std::size_t>(d);
  return n;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::size_t> strides(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[k] = s[k + 1] * static_cast<std::size_t>(dims[k + 1]);
  return s;
}

// Sizes of the (outer, slot, inner) blocks around slot k.
struct SlotSplit {
  std::size_t outer = 1, n = 1, inner = 1;
};

SlotSplit split_at(const std::vector<int>& dims, int k) {
  if (k < 0 || k >= static_cast<int>(dims.size()))
    throw std::out_of_range("slot index " + std::to_string(k) + " out of range");
  SlotSplit s;
  for (int j = 0; j < k; ++j) s.outer *= dims[j];
  s.n = dims[k];
  for (std::size_t j = k + 1; j < dims.size(); ++j) s.inner *= dims[j];
  return s;
}

std::size_t product(const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

}  // namespace

std::size_t SectorSpec::physical_dim() const {
  const std::size_t d = dims_[0];
  const std::size_t L = dims_.size();
  switch (kind_) {
    case ParticleKind::distinguishable: return tensor_dim();
    case ParticleKind::bosonic: return binomial(d + L - 1, L);
    case ParticleKind::fermionic: return binomial(d, L);
  }
  return 0;
}

bool SectorSpec::all_qubits() const {
  return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 2; });
}

// ---------------------------------------------------------------------------

namespace tensor {

CMatrix slot_cross(const CVector& u, const CVector& w, const std::vector<int>& dims, int k) {
  const auto s = split_at(dims, k);
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  CMatrix r = CMatrix::Zero(s.n, s.n);
  for (std::size_t o = 0; o < s.outer; ++o) {
    // Blocks for a fixed outer index, viewed as n x inner.
    const std::size_t base = o * s.n * s.inner;
    Eigen::Map<const RowMat> bu(u.data() + base, s.n, s.inner);
    Eigen::Map<const RowMat> bw(w.data() + base, s.n, s.inner);
    r.noalias() += bu * bw.adjoint();
  }
  return r;
}

CMatrix slot_reduced(const CVector& v, const std::vector<int>& dims, int k) {
  return slot_cross(v, v, dims, k);
}

CMatrix slot_reduced(const CMatrix& rho, const std::vector<int>& dims, int k) {
  const auto s = split_at(dims, k);
  CMatrix r = CMatrix::Zero(s.n, s.n);
  for (std::size_t o = 0; o < s.outer; ++o)
    for (std::size_t a = 0; a < s.n; ++a)
      for (std::size_t b = 0; b < s.n; ++b) {
        cplx acc = 0;
        for (std::size_t i = 0; i < s.inner; ++i)
          acc += rho((o * s.n + a) * s.inner + i, (o * s.n + b) * s.inner + i);
        r(a, b) += acc;
      }
  return r;
}

CVector apply_slot(const CMatrix& g, const CVector& v, const std::vector<int>& dims,
                   int k) {
  const auto s = split_at(dims, k);
  if (g.rows() != static_cast<Eigen::Index>(s.n) || g.cols() != g.rows())
    throw std::invalid_argument("apply_slot: factor dimension mismatch");
  CVector out(v.size());
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (std::size_t o = 0; o < s.outer; ++o) {
    const std::size_t base = o * s.n * s.inner;
    Eigen::Map<const RowMat> in(v.data() + base, s.n, s.inner);
    Eigen::Map<RowMat> dst(out.data() + base, s.n, s.inner);
    dst.noalias() = g * in;
  }
  return out;
}

CMatrix embed_slot(const CMatrix& g, const std::vector<int>& dims, int k) {
  const auto s = split_at(dims, k);
  const Eigen::Index n = static_cast<Eigen::Index>(product(dims));
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t o = 0; o < s.outer; ++o)
    for (std::size_t a = 0; a < s.n; ++a)
      for (std::size_t b = 0; b < s.n; ++b) {
        if (g(a, b) == cplx(0)) continue;
        for (std::size_t i = 0; i < s.inner; ++i)
          out((o * s.n + a) * s.inner + i, (o * s.n + b) * s.inner + i) = g(a, b);
      }
  return out;
}

CMatrix matricize(const CVector& v, const std::vector<int>& dims,
                  const std::vector<int>& row_slots) {
  const int L = static_cast<int>(dims.size());
  std::vector<bool> is_row(L, false);
  for (int k : row_slots) {
    if (k < 0 || k >= L || is_row[k])
      throw std::invalid_argument("matricize: invalid bipartition");
    is_row[k] = true;
  }
  std::vector<int> col_slots;
  for (int k = 0; k < L; ++k)
    if (!is_row[k]) col_slots.push_back(k);

  std::size_t rows = 1, cols = 1;
  for (int k : row_slots) rows *= dims[k];
  for (int k : col_slots) cols *= dims[k];
  const auto st = strides(dims);
  CMatrix m(rows, cols);
  std::vector<int> digit(L, 0);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    std::size_t rem = idx;
    for (int k = 0; k < L; ++k) {
      digit[k] = static_cast<int>(rem / st[k]);
      rem %= st[k];
    }
    std::size_t r = 0, c = 0;
    for (int k : row_slots) r = r * dims[k] + digit[k];
    for (int k : col_slots) c = c * dims[k] + digit[k];
    m(r, c) = v(idx);
  }
  return m;
}

CVector symmetrize(const CVector& v, int d, int particles, bool antisymmetric) {
  const std::vector<int> dims(particles, d);
  const auto st = strides(dims);
  std::vector<int> perm(particles);
  std::iota(perm.begin(), perm.end(), 0);
  CVector out = CVector::Zero(v.size());
  std::vector<int> digit(particles);
  double count = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < particles; ++i)
      for (int j = i + 1; j < particles; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const double sign = (antisymmetric && (inversions % 2)) ? -1.0 : 1.0;
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
      std::size_t rem = idx;
      for (int k = 0; k < particles; ++k) {
        digit[k] = static_cast<int>(rem / st[k]);
        rem %= st[k];
      }
      std::size_t target = 0;
      for (int k = 0; k < particles; ++k) target += digit[perm[k]] * st[k];
      out(target) += sign * v(idx);
    }
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out / count;
}

}  // namespace tensor

// ---------------------------------------------------------------------------

PureState make_state(const SectorSpec& sector, const CVector& amplitudes,
                     const Tolerances& tol) {
  if (static_cast<std::size_t>(amplitudes.size()) != sector.tensor_dim())
    throw std::invalid_argument("make_state: amplitude length " +
                                std::to_string(amplitudes.size()) + " does not match " +
                                "tensor dimension " + std::to_string(sector.tensor_dim()));
  if (!amplitudes.allFinite()) throw std::invalid_argument("make_state: non-finite amplitude");
  const double n0 = amplitudes.norm();
  if (!(n0 > 0)) throw std::invalid_argument("make_state: zero vector");

  CVector v = amplitudes / n0;
  if (!sector.is_distinguishable()) {
    const bool anti = sector.kind() == ParticleKind::fermionic;
    v = tensor::symmetrize(v, sector.slot_dims()[0], sector.num_slots(), anti);
    const double n1 = v.norm();
    if (n1 < tol.construct_tol)
      throw std::invalid_argument(anti ? "make_state: zero antisymmetric part"
                                       : "make_state: zero symmetric part");
    v /= n1;
  }
  return PureState(sector, std::move(v));
}

CMatrix reduced_density_matrix(const PureState& state, int k) {
  const auto& sec = state.sector();
  if (k < 0 || k >= sec.num_subsystems())
    throw std::out_of_range("reduced_density_matrix: subsystem index " + std::to_string(k) +
                            " out of range");
  CMatrix r = tensor::slot_reduced(state.amplitudes(), sec.slot_dims(), k);
  return r / r.trace().real();
}

DensityMatrix reduced_density(const PureState& state, int k) {
  return DensityMatrix::make({state.sector().subsystem_dim(k)},
                             reduced_density_matrix(state, k));
}

PureState apply_local(const LocalOperator& op, const PureState& state,
                      const Tolerances& tol) {
  const auto& sec = state.sector();
  const int L = sec.num_slots();
  const bool broadcast = !sec.is_distinguishable() && op.factors.size() == 1;
  if (!broadcast && static_cast<int>(op.factors.size()) != L)
    throw std::invalid_argument("apply_local: expected " + std::to_string(L) + " factors");
  if (!sec.is_distinguishable() && !broadcast) {
    for (const auto& f : op.factors)
      if (f.rows() != op.factors[0].rows() ||
          (f - op.factors[0]).cwiseAbs().maxCoeff() > tol.construct_tol)
        throw std::invalid_argument("apply_local: identical particles need equal factors");
  }
  CVector v = state.amplitudes();
  for (int k = 0; k < L; ++k) {
    const CMatrix& g = op.factors[broadcast ? 0 : k];
    if (g.rows() != g.cols() || g.rows() != sec.slot_dims()[k])
      throw std::invalid_argument("apply_local: factor " + std::to_string(k) +
                                  " has wrong shape");
    if (!g.allFinite()) throw std::invalid_argument("apply_local: non-finite factor");
    v = tensor::apply_slot(g, v, sec.slot_dims(), k);
  }
  const double n = v.norm();
  if (!(n >= 1e-14)) throw std::domain_error("apply_local: operator annihilates the state");
  return make_state(sec, v / n, tol);
}

cplx overlap(const PureState& a, const PureState& b) {
  if (!(a.sector() == b.sector())) throw std::invalid_argument("overlap: sector mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(overlap(a, b)); }

// ---------------------------------------------------------------------------

DensityMatrix DensityMatrix::make(std::vector<int> dims, CMatrix m, const Tolerances& tol) {
  if (dims.empty()) throw std::invalid_argument("DensityMatrix: no subsystems");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("DensityMatrix: invalid local dimension");
  const auto n = static_cast<Eigen::Index>(product(dims));
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("DensityMatrix: matrix is not " + std::to_string(n) + "x" +
                                std::to_string(n));
  if (!m.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (!linalg::is_hermitian(m, tol.construct_tol))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(m.trace() - cplx(1)) > tol.construct_tol)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  m = (m + m.adjoint()).eval() / 2.0;
  const RVector ev = linalg::hermitian_eigenvalues_desc(m);
  if (ev(ev.size() - 1) < -tol.psd_slack)
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  return DensityMatrix(std::move(dims), std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  const CVector& v = state.amplitudes();
  return DensityMatrix(state.sector().slot_dims(), v * v.adjoint());
}

// ---------------------------------------------------------------------------

PureState random_state(const SectorSpec& sector, Rng& rng) {
  return make_state(sector, linalg::random_complex_vector(
                                static_cast<int>(sector.tensor_dim()), rng));
}

LocalOperator random_local_unitary(const SectorSpec& sector, Rng& rng) {
  LocalOperator op;
  if (sector.is_distinguishable()) {
    for (int d : sector.slot_dims()) op.factors.push_back(linalg::random_unitary(d, rng));
  } else {
    op.factors.push_back(linalg::random_unitary(sector.slot_dims()[0], rng));
  }
  return op;
}

DensityMatrix random_density(const std::vector<int>& dims, Rng& rng) {
  const int n = static_cast<int>(product(dims));
  const CMatrix g = linalg::random_complex_matrix(n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix::make(dims, rho);
}

}  // namespace momap
