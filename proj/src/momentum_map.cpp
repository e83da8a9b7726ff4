#include "momap/momentum_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace momap {

std::string to_string(PolytopeMembership m) {
  switch (m) {
    case PolytopeMembership::inside: return "inside";
    case PolytopeMembership::boundary: return "boundary";
    case PolytopeMembership::outside: return "outside";
  }
  return "unknown";
}

std::string to_string(ReducedCase c) {
  switch (c) {
    case ReducedCase::interior: return "interior";
    case ReducedCase::boundary_i: return "boundary_i";
    case ReducedCase::boundary_ii: return "boundary_ii";
    case ReducedCase::boundary_iii: return "boundary_iii";
  }
  return "unknown";
}

RVector SpectraPoint::qubit_lambdas() const {
  RVector out(static_cast<Eigen::Index>(lambdas.size()));
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (lambdas[k].size() != 2)
      throw std::invalid_argument("qubit_lambdas: subsystem " + std::to_string(k) +
                                  " is not a qubit");
    out(static_cast<Eigen::Index>(k)) = lambdas[k](0);
  }
  return out;
}

MomentumPoint momentum(const PureState& state) {
  MomentumPoint mu;
  const int n = state.sector().num_subsystems();
  mu.blocks.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int d = state.sector().subsystem_dim(k);
    mu.blocks.push_back(reduced_density_matrix(state, k) -
                        CMatrix::Identity(d, d) / double(d));
  }
  return mu;
}

double norm_mu_squared(const MomentumPoint& mu) {
  double s = 0;
  for (const auto& m : mu.blocks) s += (m * m).trace().real();
  return 0.25 * s;
}

double norm_mu_squared(const PureState& state) { return norm_mu_squared(momentum(state)); }

double mean_linear_entropy(const PureState& state) {
  const int n = state.sector().num_subsystems();
  double s = 0;
  for (int k = 0; k < n; ++k) {
    const CMatrix r = reduced_density_matrix(state, k);
    s += 1.0 - (r * r).trace().real();
  }
  return s / n;
}

SpectraPoint psi(const MomentumPoint& mu) {
  SpectraPoint sp;
  for (const auto& m : mu.blocks) sp.lambdas.push_back(linalg::hermitian_eigenvalues_desc(m));
  return sp;
}

SpectraPoint psi(const PureState& state) { return psi(momentum(state)); }

namespace {

struct PolytopeSlack {
  double min_coord = 0;     // min_l lambda_l
  double max_coord = 0;     // max_l lambda_l
  double min_polygon = 0;   // min_l [sum_{j!=l}(1/2-lambda_j) - (1/2-lambda_l)]
};

PolytopeSlack slack(const RVector& lambda) {
  if (lambda.size() < 1) throw std::invalid_argument("kirwan polytope: empty lambda");
  PolytopeSlack s;
  s.min_coord = lambda.minCoeff();
  s.max_coord = lambda.maxCoeff();
  const RVector q = (0.5 - lambda.array()).matrix();
  const double total = q.sum();
  s.min_polygon = std::numeric_limits<double>::infinity();
  for (Eigen::Index l = 0; l < q.size(); ++l)
    s.min_polygon = std::min(s.min_polygon, (total - q(l)) - q(l));
  return s;
}

}  // namespace

PolytopeMembership kirwan_contains(const RVector& lambda, double band) {
  const auto s = slack(lambda);
  if (s.min_coord < -band || s.max_coord > 0.5 + band || s.min_polygon < -band)
    return PolytopeMembership::outside;
  bool on_face = s.min_polygon <= band;
  for (Eigen::Index l = 0; l < lambda.size(); ++l)
    if (std::abs(lambda(l)) <= band || std::abs(lambda(l) - 0.5) <= band) on_face = true;
  return on_face ? PolytopeMembership::boundary : PolytopeMembership::inside;
}

long reduced_space_formula(ReducedCase c, int L, int k) {
  switch (c) {
    case ReducedCase::interior: return (2L << L) - 4L * L - 2;
    case ReducedCase::boundary_i: return (2L << (L - k)) - 4L * (L - k) - 2;
    case ReducedCase::boundary_ii: return 0;
    case ReducedCase::boundary_iii: return (2L << L) - 4L * L - 2L * k - 2;
  }
  return 0;
}

ReducedSpaceReport reduced_space_dim(const RVector& lambda, double band) {
  if (kirwan_contains(lambda, band) == PolytopeMembership::outside)
    throw std::domain_error("reduced_space_dim: point lies outside the Kirwan polytope");
  const int L = static_cast<int>(lambda.size());
  ReducedSpaceReport r;
  const auto s = slack(lambda);
  int half = 0, zero = 0;
  for (Eigen::Index l = 0; l < lambda.size(); ++l) {
    if (std::abs(lambda(l) - 0.5) <= band) ++half;
    else if (std::abs(lambda(l)) <= band) ++zero;
  }
  if (s.min_polygon <= band) {
    r.kind = ReducedCase::boundary_ii;
  } else if (half > 0) {
    r.kind = ReducedCase::boundary_i;
    r.k = half;
  } else if (zero > 0) {
    r.kind = ReducedCase::boundary_iii;
    r.k = zero;
  }
  // The case (iii) formula undershoots for very small L; dimensions are clamped at 0.
  r.dim = static_cast<int>(std::max(0L, reduced_space_formula(r.kind, L, r.k)));
  return r;
}

namespace {

void require_anti_hermitian(const LocalAlgebraElement& xi, const SectorSpec& sec,
                            const Tolerances& tol) {
  const bool broadcast = !sec.is_distinguishable() && xi.factors.size() == 1;
  if (!broadcast && static_cast<int>(xi.factors.size()) != sec.num_slots())
    throw std::invalid_argument("kks_form_pure: wrong number of algebra factors");
  for (std::size_t k = 0; k < xi.factors.size(); ++k) {
    const CMatrix& x = xi.factors[k];
    if (x.rows() != x.cols() || x.rows() != sec.slot_dims()[k])
      throw std::invalid_argument("kks_form_pure: factor has wrong shape");
    if ((x + x.adjoint()).cwiseAbs().maxCoeff() > tol.construct_tol)
      throw std::invalid_argument("kks_form_pure: factor is not anti-Hermitian");
  }
}

}  // namespace

double kks_form_pure(const PureState& state, const LocalAlgebraElement& xi1,
                     const LocalAlgebraElement& xi2, const Tolerances& tol) {
  const auto& sec = state.sector();
  require_anti_hermitian(xi1, sec, tol);
  require_anti_hermitian(xi2, sec, tol);
  if (xi1.factors.size() != xi2.factors.size())
    throw std::invalid_argument("kks_form_pure: mismatched algebra elements");
  const CVector& v = state.amplitudes();
  // Slot operators commute across slots, so the commutator is slot-local.
  CVector cv = CVector::Zero(v.size());
  for (int k = 0; k < sec.num_slots(); ++k) {
    const std::size_t f = xi1.factors.size() == 1 ? 0 : static_cast<std::size_t>(k);
    const CMatrix c = xi1.factors[f] * xi2.factors[f] - xi2.factors[f] * xi1.factors[f];
    cv += tensor::apply_slot(c, v, sec.slot_dims(), k);
  }
  const cplx expect = v.dot(cv) / v.squaredNorm();
  return (cplx(0, -1) * expect / 2.0).real();
}

CVector apply_momentum_operator(const MomentumPoint& mu, const PureState& state) {
  const auto& sec = state.sector();
  const CVector& v = state.amplitudes();
  CVector out = CVector::Zero(v.size());
  for (int k = 0; k < sec.num_slots(); ++k) {
    const CMatrix& m = mu.blocks[sec.is_distinguishable() ? k : 0];
    out += tensor::apply_slot(m, v, sec.slot_dims(), k);
  }
  return out;
}

}  // namespace momap
