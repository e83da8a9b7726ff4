#pragma once

#include <string>
#include <vector>

#include "momap/tensor_state.hpp"

namespace momap {

/// Value of the momentum map: the shifted reduced density matrices
/// m_k = rho_k - I/N_k (one block for bosons and fermions). The conventional
/// i/2 prefactor is dropped so the blocks are Hermitian.
struct MomentumPoint {
  std::vector<CMatrix> blocks;
};

/// Per-subsystem eigenvalues of m_k, sorted nonincreasing.
struct SpectraPoint {
  std::vector<RVector> lambdas;

  /// The nonnegative eigenvalue of each 2x2 block (one lambda per qubit).
  /// Throws if some block is not 2x2.
  RVector qubit_lambdas() const;
};

enum class PolytopeMembership { inside, boundary, outside };
std::string to_string(PolytopeMembership m);

enum class ReducedCase { interior, boundary_i, boundary_ii, boundary_iii };
std::string to_string(ReducedCase c);

struct ReducedSpaceReport {
  ReducedCase kind = ReducedCase::interior;
  int k = 0;   // number of saturated coordinates for cases (i) and (iii)
  int dim = 0;
};

MomentumPoint momentum(const PureState& state);

/// (1/4) sum_k Tr(m_k^2).
double norm_mu_squared(const PureState& state);
double norm_mu_squared(const MomentumPoint& mu);

/// (1/L) sum_k (1 - Tr rho_k^2), L the number of subsystems.
double mean_linear_entropy(const PureState& state);

SpectraPoint psi(const PureState& state);
SpectraPoint psi(const MomentumPoint& mu);

/// Membership in the L-qubit Kirwan polytope
///   0 <= lambda_l <= 1/2,  1/2 - lambda_l <= sum_{j != l} (1/2 - lambda_j),
/// with a boundary band of width band.
PolytopeMembership kirwan_contains(const RVector& lambda, double band = 1e-9);

/// Dimension of the reduced space over a point of the qubit polytope. Case
/// priority is (ii), (i), (iii). Throws std::domain_error for points outside.
ReducedSpaceReport reduced_space_dim(const RVector& lambda, double band = 1e-9);

/// Raw dimension formulas (may be negative for small L where the case is void):
///   interior 2^{L+1}-4L-2, (i) 2^{L-k+1}-4(L-k)-2, (ii) 0, (iii) 2^{L+1}-4L-2k-2.
long reduced_space_formula(ReducedCase c, int L, int k);

/// Kirillov-Kostant-Souriau form -i<v|[xi1, xi2] v> / (2 <v|v>) for local
/// anti-Hermitian algebra elements. Throws std::invalid_argument otherwise.
double kks_form_pure(const PureState& state, const LocalAlgebraElement& xi1,
                     const LocalAlgebraElement& xi2, const Tolerances& tol = {});

/// A = sum_k m_k acting on slot k, applied to the amplitude vector.
CVector apply_momentum_operator(const MomentumPoint& mu, const PureState& state);

}  // namespace momap
